#include "abconvex/json_writer.hpp"

#include <cmath>
#include <cstdio>

namespace abconvex::json {

std::string fmt_double(double v) {
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void Writer::newline() {
  out_ += '\n';
  out_.append(2 * stack_.size(), ' ');
}

void Writer::pre_value() {
  if (after_key_) {
    after_key_ = false;
    return;
  }
  if (!stack_.empty()) {
    if (comma_due_.back() == '1') out_ += ',';
    comma_due_.back() = '1';
    newline();
  }
}

Writer& Writer::begin_object() {
  pre_value();
  out_ += '{';
  stack_ += '{';
  comma_due_ += '0';
  return *this;
}

Writer& Writer::end_object() {
  const bool empty = comma_due_.back() == '0';
  stack_.pop_back();
  comma_due_.pop_back();
  if (!empty) newline();
  out_ += '}';
  return *this;
}

Writer& Writer::begin_array() {
  pre_value();
  out_ += '[';
  stack_ += '[';
  comma_due_ += '0';
  return *this;
}

Writer& Writer::end_array() {
  const bool empty = comma_due_.back() == '0';
  stack_.pop_back();
  comma_due_.pop_back();
  if (!empty) newline();
  out_ += ']';
  return *this;
}

Writer& Writer::key(std::string_view k) {
  pre_value();
  out_ += '"';
  out_ += k;
  out_ += "\": ";
  after_key_ = true;
  return *this;
}

Writer& Writer::value(double v) {
  pre_value();
  out_ += fmt_double(v);
  return *this;
}

Writer& Writer::value(ExtReal v) { return value(v.as_double()); }

Writer& Writer::value(bool v) {
  pre_value();
  out_ += v ? "true" : "false";
  return *this;
}

Writer& Writer::value(int v) {
  pre_value();
  out_ += std::to_string(v);
  return *this;
}

Writer& Writer::value(std::string_view v) {
  pre_value();
  out_ += '"';
  for (char c : v) {
    switch (c) {
      case '"': out_ += "\\\""; break;
      case '\\': out_ += "\\\\"; break;
      case '\n': out_ += "\\n"; break;
      default: out_ += c;
    }
  }
  out_ += '"';
  return *this;
}

Writer& Writer::null() {
  pre_value();
  out_ += "null";
  return *this;
}

std::string Writer::take() {
  out_ += '\n';
  return std::move(out_);
}

}  // namespace abconvex::json
