#include "specrank/ranking.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>
#include <numeric>

#include "json.hpp"
#include "specrank/errors.hpp"

namespace specrank {
namespace {

double wrap_angle(double theta) {
  // Into (-pi, pi].
  theta = std::remainder(theta, 2.0 * std::numbers::pi);
  if (theta <= -std::numbers::pi) theta += 2.0 * std::numbers::pi;
  return theta;
}

#ifndef NDEBUG
// The three-branch arctangent formula, kept to cross-check atan2.
double branch_angle(double re_sum, double im_sum) {
  if (im_sum < 0.0) return std::atan(re_sum / im_sum);
  if (im_sum == 0.0) {
    return -std::numbers::pi / 2.0 *
           static_cast<double>((re_sum > 0.0) - (re_sum < 0.0));
  }
  return std::numbers::pi + std::atan(re_sum / im_sum);
}
#endif

}  // namespace

std::string_view to_string(Method method) {
  return method == Method::kUnnormalized ? "unnormalized" : "normalized";
}

Method parse_method(std::string_view text) {
  if (text == "unnormalized") return Method::kUnnormalized;
  if (text == "normalized") return Method::kNormalized;
  throw Error(ErrorKind::kInvalidArgument,
              "unknown method '" + std::string(text) + "'");
}

double rotation_angle(const Vector& re, const Vector& im) {
  const double a = re.sum();
  const double b = im.sum();
  if (a == 0.0 && b == 0.0) return 0.0;
  // e^{i theta} (a + i b) must land on the negative imaginary axis.
  const double theta = wrap_angle(-std::numbers::pi / 2.0 - std::atan2(b, a));
#ifndef NDEBUG
  const double diff = wrap_angle(theta - branch_angle(a, b));
  assert(std::abs(diff) < 1e-9 && "atan2 and branch formula disagree");
#endif
  return theta;
}

ComplexVector rotate(const ComplexVector& v, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {c * v.re - s * v.im, s * v.re + c * v.im};
}

Permutation ranks_ascending(const Vector& score) {
  const auto n = static_cast<std::size_t>(score.size());
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return score[static_cast<Eigen::Index>(a)] < score[static_cast<Eigen::Index>(b)];
  });
  Permutation ranks(n);
  for (std::size_t pos = 0; pos < n; ++pos) ranks[order[pos]] = pos + 1;
  return ranks;
}

SpectralEstimate rank_unnormalized(const ComparisonMatrix& h,
                                   const SolverOptions& options) {
  SpectralEstimate out;
  out.method = Method::kUnnormalized;
  out.eigen = top_eigenpair_antisym(h, options);
  out.theta_hat = rotation_angle(out.eigen.vector.re, out.eigen.vector.im);
  out.score = rotate(out.eigen.vector, out.theta_hat).re;
  out.permutation = ranks_ascending(out.score);
  return out;
}

SpectralEstimate rank_normalized(const ComparisonMatrix& h,
                                 const SolverOptions& options) {
  SpectralEstimate out;
  out.method = Method::kNormalized;
  out.eigen = top_eigenpair_normalized(h, options);
  out.theta_hat = rotation_angle(out.eigen.vector.re, out.eigen.vector.im);
  out.score = h.degree.cwiseProduct(rotate(out.eigen.vector, out.theta_hat).re);
  out.permutation = ranks_ascending(out.score);
  return out;
}

SpectralEstimate rank(Method method, const ComparisonMatrix& h,
                      const SolverOptions& options) {
  return method == Method::kUnnormalized ? rank_unnormalized(h, options)
                                         : rank_normalized(h, options);
}

SpectralEstimate align_sign(SpectralEstimate estimate, const Vector& reference) {
  if (reference.size() != estimate.score.size()) {
    throw Error(ErrorKind::kInvalidArgument, "reference length mismatch");
  }
  const double score_norm = estimate.score.norm();
  const double ref_norm = reference.norm();
  if (!(score_norm > 0.0) || !(ref_norm > 0.0)) return estimate;
  const Vector a = estimate.score / score_norm;
  const Vector b = reference / ref_norm;
  const double keep = (a - b).cwiseAbs().maxCoeff();
  const double flip = (a + b).cwiseAbs().maxCoeff();
  if (flip < keep) {
    estimate.score = -estimate.score;
    const std::size_t n = estimate.permutation.size();
    for (auto& r : estimate.permutation) r = n + 1 - r;
    estimate.sign_used = -estimate.sign_used;
  }
  return estimate;
}

std::string estimate_to_json(const SpectralEstimate& estimate) {
  nlohmann::ordered_json j;
  j["method"] = std::string(to_string(estimate.method));
  j["theta_hat"] = estimate.theta_hat;
  j["eigenvalue"] = estimate.eigen.value;
  j["score"] = std::vector<double>(estimate.score.begin(), estimate.score.end());
  j["permutation"] = estimate.permutation;
  return j.dump();
}

}  // namespace specrank
