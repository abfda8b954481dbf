#include "degenlab/limits.hpp"

#include <cmath>
#include <limits>

#include "degenlab/error.hpp"

namespace degenlab::constitutive {

bool LimitEstimate::supports(double L, double max_width) const {
  if (diverging || !std::isfinite(value)) return false;
  return band < max_width && std::abs(value - L) <= band + 1e-12;
}

std::vector<double> geometric_sequence(double start, double ratio, int count) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  double s = start;
  for (int k = 0; k < count; ++k, s *= ratio) out.push_back(s);
  return out;
}

std::vector<double> log_grid(double lo, double hi, int count) {
  if (count < 2 || !(lo > 0.0) || !(hi > lo)) {
    throw Error(ErrorCode::InvalidArgument, "log_grid needs 0 < lo < hi and count >= 2");
  }
  std::vector<double> out(static_cast<std::size_t>(count));
  const double a = std::log(lo);
  const double step = (std::log(hi) - a) / (count - 1);
  for (int k = 0; k < count; ++k) out[static_cast<std::size_t>(k)] = std::exp(a + step * k);
  out.front() = lo;
  out.back() = hi;
  return out;
}

namespace {

// One Aitken sweep; entries whose second difference vanishes keep the last
// value (the sequence is already stationary there).
std::vector<double> aitken(const std::vector<double>& f) {
  std::vector<double> out;
  for (std::size_t k = 2; k < f.size(); ++k) {
    const double d1 = f[k] - f[k - 1];
    const double d2 = f[k] - 2.0 * f[k - 1] + f[k - 2];
    const double scale = std::abs(f[k]) + std::abs(f[k - 1]) + std::abs(f[k - 2]);
    if (std::abs(d2) <= 1e-14 * scale || !std::isfinite(d2)) {
      out.push_back(f[k]);
    } else {
      out.push_back(f[k] - d1 * d1 / d2);
    }
  }
  return out;
}

}  // namespace

LimitEstimate estimate_limit_at_zero(const std::function<double(double)>& f,
                                     const std::vector<double>& s) {
  if (s.size() < 4) throw Error(ErrorCode::InvalidArgument, "need at least 4 limit samples");
  LimitEstimate out;
  out.samples_s = s;
  out.samples_f.reserve(s.size());
  for (double x : s) out.samples_f.push_back(f(x));
  const auto& v = out.samples_f;
  const std::size_t n = v.size();

  // Unbounded growth: increasing values whose increments do not contract.
  const double d_last = v[n - 1] - v[n - 2];
  const double d_prev = v[n - 2] - v[n - 3];
  const double d_prev2 = v[n - 3] - v[n - 4];
  if (!std::isfinite(v[n - 1]) ||
      (d_last > 0.0 && d_prev > 0.0 && d_prev2 > 0.0 && d_last >= 0.9 * d_prev &&
       d_prev >= 0.9 * d_prev2)) {
    out.diverging = true;
    out.value = std::numeric_limits<double>::infinity();
    out.band = std::numeric_limits<double>::infinity();
    return out;
  }

  const std::vector<double> acc = aitken(v);
  if (acc.size() < 2) {
    out.value = v[n - 1];
    out.band = std::abs(v[n - 1] - v[n - 2]);
  } else {
    out.value = acc[acc.size() - 1];
    out.band = std::abs(acc[acc.size() - 1] - acc[acc.size() - 2]);
  }
  return out;
}

}  // namespace degenlab::constitutive
