#include "pcf/pcf.hpp"

namespace pcf {

Matrix<ApproxComplex> RealClosedForm::eval(long long k) const {
  std::vector<ApproxComplex> vals;
  vals.reserve(entries.size());
  for (const auto& e : entries) vals.push_back(e.eval(k));
  return Matrix<ApproxComplex>(order, std::move(vals));
}

RealClosedForm RealClosedForm::in_power_basis() const {
  RealClosedForm out{order, {}};
  for (const auto& e : entries) out.entries.push_back(to_power_basis(e));
  return out;
}

bool RealClosedForm::has_trigonometric_atoms() const {
  for (const auto& e : entries)
    for (const auto& [t, c] : e.terms())
      if (t.is_real()) return true;
  return false;
}

std::string RealClosedForm::to_string() const {
  std::ostringstream os;
  for (std::size_t r = 0; r < order; ++r)
    for (std::size_t c = 0; c < order; ++c)
      os << "a" << r + 1 << c + 1 << "(k) = " << pcf::to_string(entries[r * order + c]) << '\n';
  return os.str();
}

RealClosedForm real_form(const PCanonicalForm<ApproxComplex>& f, const Matrix<ApproxComplex>& a) {
  const TolerancePolicy& pol = f.policy();
  for (const auto& x : a.entries())
    if (std::abs(x.im()) > pol.abs_eps + pol.rel_eps * x.abs())
      throw std::invalid_argument("real closed form needs a matrix with real entries");
  RealClosedForm out{f.order(), {}};
  for (const auto& e : f.entrywise()) out.entries.push_back(realify(e));
  return out;
}

}  // namespace pcf
