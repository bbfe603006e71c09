#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "nsopt/data.hpp"
#include "nsopt/types.hpp"

namespace nsopt {

enum class HingeMode {
  l1_regularized,  // lambda ||w||_1 + mean hinge; the l1 term is the prox'd
                   // regularizer r, the hinge average is the oracle's f
  l2_svm           // (lambda/2)||w||^2 + mean hinge; the quadratic is folded
                   // into f (subgradients include lambda w) and Q is the
                   // Pegasos ball of radius 1/sqrt(lambda)
};

/// Regularized hinge loss learning problem over a sparse dataset.
class HingeProblem {
 public:
  HingeProblem(Dataset data, double lambda, HingeMode mode);

  std::size_t dim() const { return data_.dimension; }
  std::size_t size() const { return data_.size(); }
  double lambda() const { return lambda_; }
  HingeMode mode() const { return mode_; }
  const Dataset& data() const { return data_; }

  /// Per-sample hinge value and subgradient (no regularizer terms).
  /// Subgradient is -y_i x_i when the margin is < 1 and exactly zero
  /// otherwise; the tie at margin == 1 returns zero (0 is in the
  /// subdifferential at the kink and it is the minimal-norm choice).
  std::pair<double, Vector> value_subgrad(const Vector& w,
                                          std::size_t index) const;

  /// Value and subgradient of the oracle's f: the mean hinge, plus the
  /// folded (lambda/2)||w||^2 term in l2_svm mode.
  std::pair<double, Vector> value_subgrad(const Vector& w) const;

  /// The full objective F(w) of Eq-style l1 (lambda||w||_1 + mean hinge)
  /// or SVM ((lambda/2)||w||^2 + mean hinge). Used at trace evaluation
  /// points only.
  double full_objective(const Vector& w) const;

  double loss_value(const Vector& w) const;

  Oracle oracle() const;
  Regularizer regularizer() const;
  FeasibleSet feasible_set() const;
  double mu() const;
  /// Analytic subgradient-norm bound over Q: max_i ||x_i||, plus
  /// sqrt(lambda) for the folded quadratic on the Pegasos ball.
  double lipschitz_bound() const;

  ProblemInstance instance() const;

 private:
  Dataset data_;
  double lambda_;
  HingeMode mode_;
  double max_row_norm_;
};

/// Synthetic nonsmooth objective max_i(<a_i, w> + b_i) (+ (mu/2)||w||^2)
/// with a certified optimum at the origin: pieces come in {+a, -a} pairs
/// sharing one offset, so 0 is in the subdifferential at 0 and
/// f* = b exactly.
class MaxAffineProblem {
 public:
  MaxAffineProblem(std::vector<Vector> slopes, double offset, double mu,
                   double noise_sigma = 0.0);

  std::size_t dim() const;
  std::size_t pieces() const { return slopes_.size(); }
  double mu() const { return mu_; }
  double fstar() const { return offset_; }
  const Vector& wstar() const { return wstar_; }

  double value(const Vector& w) const;
  Vector subgrad(const Vector& w) const;

  /// max_i ||a_i||, plus mu * radius when a quadratic is present.
  double lipschitz_bound(double radius = 1.0) const;

  Oracle oracle() const;
  ProblemInstance instance(const Vector& w0) const;

 private:
  std::vector<Vector> slopes_;
  double offset_;
  double mu_;
  double noise_sigma_;
  Vector wstar_;
};

/// Random instance with num_pieces >= 2 slopes in +-pairs of norm in
/// [0.5, 1.5]. An odd piece count adds one extra random slope; with the
/// shared offset this leaves the certificate at the origin untouched.
MaxAffineProblem make_max_affine(std::size_t dimension, std::size_t num_pieces,
                                 double mu, std::uint64_t seed,
                                 double noise_sigma = 0.0);

/// Separable quadratic f(w) = 1/2 sum d_j w_j^2 for the smooth baseline;
/// L = max d_j, minimum 0 at the origin.
class DiagonalQuadratic {
 public:
  explicit DiagonalQuadratic(Vector diag);

  std::size_t dim() const { return diag_.size(); }
  double smooth_l() const { return l_; }
  double value(const Vector& w) const;
  Vector grad(const Vector& w) const;

  Oracle oracle() const;
  ProblemInstance instance(const Vector& w0) const;

 private:
  Vector diag_;
  double l_;
};

}  // namespace nsopt
