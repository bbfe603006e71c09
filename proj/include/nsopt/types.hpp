#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "nsopt/vector_ops.hpp"

namespace nsopt {

using Rng = std::mt19937_64;

/// Sparse data sample: strictly increasing 0-based indices, no stored zeros.
struct SparseVector {
  std::vector<std::uint32_t> indices;
  std::vector<double> values;

  SparseVector() = default;
  SparseVector(std::vector<std::uint32_t> idx, std::vector<double> val);

  std::size_t nnz() const { return indices.size(); }
  /// largest index + 1, 0 when empty
  std::size_t min_dimension() const;
  double dot(const Vector& w) const;
  /// w += alpha * this
  void add_to(Vector& w, double alpha) const;
  double squared_norm() const;

  bool operator==(const SparseVector&) const = default;
};

double dot(const SparseVector& a, const Vector& b);

/// Black-box first-order access to a convex function f.
///
/// `subgrad` returns some element of the subdifferential; `sample_subgrad`,
/// when present, returns an unbiased estimate of one. `mu` is the strong
/// convexity modulus (0 when merely convex). `lipschitz_m` and
/// `variance_sigma2` are optional metadata used by bound monitors.
struct Oracle {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> subgrad;
  std::function<Vector(const Vector&, Rng&)> sample_subgrad;
  double mu = 0.0;
  std::optional<double> lipschitz_m;
  std::optional<double> variance_sigma2;
};

struct SubgradientReport {
  double worst_slack = std::numeric_limits<double>::infinity();
  std::size_t worst_pair = 0;
  bool pass(double tol = 1e-9) const { return worst_slack >= -tol; }
};

/// Evaluates f(u) - f(w) - <g(w), u-w> - (mu/2)||u-w||^2 over the given
/// pairs and reports the most negative value (>= 0 for a valid oracle).
SubgradientReport check_subgradient_validity(
    const Oracle& oracle, const std::vector<std::pair<Vector, Vector>>& pairs);

class FeasibleSet {
 public:
  enum class Kind { whole_space, l2_ball };

  static FeasibleSet whole_space();
  /// Ball of the given radius; empty center means the origin.
  static FeasibleSet l2_ball(double radius, Vector center = {});

  Kind kind() const { return kind_; }
  bool is_whole_space() const { return kind_ == Kind::whole_space; }
  double radius() const { return radius_; }
  const Vector& center() const { return center_; }

 private:
  FeasibleSet(Kind k, double r, Vector c)
      : kind_(k), radius_(r), center_(std::move(c)) {}
  Kind kind_;
  double radius_ = 0.0;
  Vector center_;
};

/// Simple convex regularizer r with a closed-form prox.
/// squared_l2(lambda) is (lambda/2)||w||^2 and reports modulus lambda.
class Regularizer {
 public:
  enum class Kind { zero, l1, squared_l2 };

  static Regularizer zero();
  static Regularizer l1(double lambda);
  static Regularizer squared_l2(double lambda);

  Kind kind() const { return kind_; }
  double lambda() const { return lambda_; }
  double value(const Vector& w) const;
  double strong_convexity() const;
  bool is_zero() const { return kind_ == Kind::zero; }

 private:
  Regularizer(Kind k, double l) : kind_(k), lambda_(l) {}
  Kind kind_ = Kind::zero;
  double lambda_ = 0.0;
};

/// Aux state for the dual-averaging / primal-averaging families.
struct PaAux {
  Vector dual_sum;          // s_t = sum a_k g(w_k)  (quasi-monotone DA)
  Vector plus;              // w_t^+
  Vector origin;            // prox center w_0 of d(w)
  Vector plus_weighted_sum; // sum a_k w_{k-1}^+   (running-average identity)
  double weight_total = 0.0;  // A_t = sum a_k
};

/// One solver run's mutable state. At t = 0, w_curr = w_prev = w_0 and
/// theta_curr = theta_prev = 1, mirroring the w_0 = w_{-1} initialization.
struct SolverState {
  std::size_t t = 0;
  Vector w_curr;
  Vector w_prev;
  double theta_curr = 1.0;
  double theta_prev = 1.0;
  std::optional<PaAux> pa;

  static SolverState initial(Vector w0);
  void advance(Vector w_next, double theta_used);
};

struct TraceRow {
  std::size_t t = 0;
  double f_individual = 0.0;
  double f_averaged = 0.0;
  double sparsity_pct = 0.0;
  std::int64_t wall_ns = 0;
};

struct Trace {
  std::vector<TraceRow> rows;
};

/// A solver-facing problem: loss oracle f, regularizer r, feasible set Q,
/// the full objective F = f + r for traces, and optional exact-optimum
/// metadata for rate fits and bound monitors.
struct ProblemInstance {
  std::size_t dim = 0;
  Oracle loss;
  Regularizer reg = Regularizer::zero();
  FeasibleSet set = FeasibleSet::whole_space();
  std::function<double(const Vector&)> objective;
  Vector w0;
  double mu = 0.0;
  std::optional<double> smooth_l;
  std::optional<double> lipschitz_m;
  std::optional<double> fstar;
  std::optional<Vector> wstar;
};

}  // namespace nsopt
