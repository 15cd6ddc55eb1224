#include "sfid/identify.hpp"

namespace sfid {

VarianceVerdict variance_identified(const SparsityPattern& p_raw) {
  auto [trimmed, report] = trim(p_raw);
  VarianceVerdict v;
  v.effective_r = report.effective_r;
  v.trim = std::move(report);
  if (v.effective_r == 0) {
    // No factors: the covariance is the diagonal itself.
    v.identified = true;
    v.degenerate = true;
    return v;
  }
  v.detail = counting_rule_s1(trimmed);
  v.identified = v.detail->holds;
  return v;
}

}  // namespace sfid
