#include "abconvex/ext_function.hpp"

#include "abconvex/errors.hpp"

namespace abconvex {

ExtFunction ExtFunction::closed_form(std::string name, std::function<ExtReal(double)> eval) {
  auto impl = std::make_shared<Impl>();
  impl->name = std::move(name);
  impl->eval = std::move(eval);
  return ExtFunction(std::move(impl));
}

ExtFunction ExtFunction::sampled(std::string name, Grid1D grid, std::vector<ExtReal> values) {
  if (values.size() != grid.size())
    throw DataError("ExtFunction::sampled: one value per grid point required");
  auto impl = std::make_shared<Impl>();
  impl->name = std::move(name);
  impl->grid = std::move(grid);
  impl->values = std::move(values);
  return ExtFunction(std::move(impl));
}

ExtReal ExtFunction::operator()(double x) const {
  if (impl_->grid) return impl_->values[impl_->grid->nearest(x)];
  return impl_->eval(x);
}

ExtFunction sum(std::span<const ExtFunction> fs, std::string name) {
  std::vector<ExtFunction> copy(fs.begin(), fs.end());
  return ExtFunction::closed_form(std::move(name), [copy = std::move(copy)](double x) {
    ExtReal s = 0.0;
    for (const auto& f : copy) s += f(x);
    return s;
  });
}

}  // namespace abconvex
