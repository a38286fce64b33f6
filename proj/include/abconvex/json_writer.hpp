#pragma once

#include <string>
#include <string_view>

#include "abconvex/ext_real.hpp"

namespace abconvex::json {

// %.9g rendering, stable across runs; +inf comes out as the string "inf".
std::string fmt_double(double v);

// Minimal streaming JSON writer with deterministic output: fixed float
// formatting, two-space indentation, and whatever key order the caller
// emits (callers keep keys sorted).
class Writer {
 public:
  Writer& begin_object();
  Writer& end_object();
  Writer& begin_array();
  Writer& end_array();
  Writer& key(std::string_view k);
  Writer& value(double v);
  Writer& value(ExtReal v);
  Writer& value(bool v);
  Writer& value(int v);
  Writer& value(std::string_view v);
  Writer& null();

  // Shorthand: key + value.
  template <class T>
  Writer& field(std::string_view k, T v) {
    key(k);
    return value(v);
  }

  std::string take();

 private:
  void pre_value();
  void newline();
  std::string out_;
  // One char per open container: '{' or '['; top of the stack tracks
  // whether a comma is due via the parallel flags.
  std::string stack_;
  std::string comma_due_;
  bool after_key_ = false;
};

}  // namespace abconvex::json
