#include "nsopt/problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

namespace nsopt {

HingeProblem::HingeProblem(Dataset data, double lambda, HingeMode mode)
    : data_(std::move(data)), lambda_(lambda), mode_(mode) {
  if (data_.rows.empty()) {
    throw std::invalid_argument("HingeProblem: need at least one sample");
  }
  if (!(lambda_ > 0.0)) {
    throw std::invalid_argument("HingeProblem: lambda must be > 0");
  }
  for (const auto& row : data_.rows) {
    if (row.label != 1.0 && row.label != -1.0) {
      throw std::invalid_argument("HingeProblem: labels must be -1/+1");
    }
    if (row.x.min_dimension() > data_.dimension) {
      throw std::invalid_argument("HingeProblem: sample exceeds dimension");
    }
  }
  max_row_norm_ = data_.max_row_norm();
}

std::pair<double, Vector> HingeProblem::value_subgrad(const Vector& w,
                                                      std::size_t index) const {
  require_same_dim(w.size(), dim(), "HingeProblem");
  const DataRow& row = data_.rows.at(index);
  const double margin = row.label * row.x.dot(w);
  Vector g = zeros(dim());
  double value = 0.0;
  if (margin < 1.0) {
    value = 1.0 - margin;
    row.x.add_to(g, -row.label);
  }
  return {value, std::move(g)};
}

std::pair<double, Vector> HingeProblem::value_subgrad(const Vector& w) const {
  require_same_dim(w.size(), dim(), "HingeProblem");
  const double inv_m = 1.0 / static_cast<double>(size());
  double value = 0.0;
  Vector g = zeros(dim());
  for (const auto& row : data_.rows) {
    const double margin = row.label * row.x.dot(w);
    if (margin < 1.0) {
      value += 1.0 - margin;
      row.x.add_to(g, -row.label * inv_m);
    }
  }
  value *= inv_m;
  if (mode_ == HingeMode::l2_svm) {
    value += 0.5 * lambda_ * squared_norm(w);
    axpy(lambda_, w, g);
  }
  return {value, std::move(g)};
}

double HingeProblem::loss_value(const Vector& w) const {
  require_same_dim(w.size(), dim(), "HingeProblem");
  double value = 0.0;
  for (const auto& row : data_.rows) {
    const double margin = row.label * row.x.dot(w);
    if (margin < 1.0) value += 1.0 - margin;
  }
  value /= static_cast<double>(size());
  if (mode_ == HingeMode::l2_svm) value += 0.5 * lambda_ * squared_norm(w);
  return value;
}

double HingeProblem::full_objective(const Vector& w) const {
  double value = loss_value(w);
  if (mode_ == HingeMode::l1_regularized) {
    double l1 = 0.0;
    for (double x : w) l1 += std::abs(x);
    value += lambda_ * l1;
  }
  return value;
}

Oracle HingeProblem::oracle() const {
  Oracle o;
  auto self = std::make_shared<const HingeProblem>(*this);
  o.value = [self](const Vector& w) { return self->loss_value(w); };
  o.subgrad = [self](const Vector& w) { return self->value_subgrad(w).second; };
  o.sample_subgrad = [self](const Vector& w, Rng& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, self->size() - 1);
    Vector g = self->value_subgrad(w, pick(rng)).second;
    if (self->mode_ == HingeMode::l2_svm) axpy(self->lambda_, w, g);
    return g;
  };
  o.mu = mu();
  o.lipschitz_m = lipschitz_bound();
  return o;
}

Regularizer HingeProblem::regularizer() const {
  return mode_ == HingeMode::l1_regularized ? Regularizer::l1(lambda_)
                                            : Regularizer::zero();
}

FeasibleSet HingeProblem::feasible_set() const {
  // the Pegasos feasible set from strong duality: ||w|| <= 1/sqrt(lambda)
  return mode_ == HingeMode::l2_svm
             ? FeasibleSet::l2_ball(1.0 / std::sqrt(lambda_))
             : FeasibleSet::whole_space();
}

double HingeProblem::mu() const {
  return mode_ == HingeMode::l2_svm ? lambda_ : 0.0;
}

double HingeProblem::lipschitz_bound() const {
  double m = max_row_norm_;
  if (mode_ == HingeMode::l2_svm) m += std::sqrt(lambda_);
  return m;
}

ProblemInstance HingeProblem::instance() const {
  ProblemInstance p;
  p.dim = dim();
  p.loss = oracle();
  p.reg = regularizer();
  p.set = feasible_set();
  auto self = std::make_shared<const HingeProblem>(*this);
  p.objective = [self](const Vector& w) { return self->full_objective(w); };
  p.w0 = zeros(dim());
  p.mu = mu();
  p.lipschitz_m = lipschitz_bound();
  return p;
}

MaxAffineProblem::MaxAffineProblem(std::vector<Vector> slopes, double offset,
                                   double mu, double noise_sigma)
    : slopes_(std::move(slopes)),
      offset_(offset),
      mu_(mu),
      noise_sigma_(noise_sigma) {
  if (slopes_.size() < 2) {
    throw std::invalid_argument("MaxAffineProblem: need at least 2 pieces");
  }
  if (mu_ < 0.0) throw std::invalid_argument("MaxAffineProblem: mu < 0");
  const std::size_t n = slopes_.front().size();
  for (const auto& a : slopes_) {
    require_same_dim(a.size(), n, "MaxAffineProblem");
    require_finite(a, "MaxAffineProblem slope");
  }
  wstar_ = zeros(n);
  // certificate: the +-pair structure puts 0 in the subdifferential at 0
  // and value offset there; verified cheaply at construction
  if (std::abs(value(wstar_) - offset_) > 1e-12) {
    throw std::invalid_argument("MaxAffineProblem: f(0) != offset");
  }
}

std::size_t MaxAffineProblem::dim() const { return slopes_.front().size(); }

double MaxAffineProblem::value(const Vector& w) const {
  require_same_dim(w.size(), dim(), "MaxAffineProblem");
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& a : slopes_) {
    best = std::max(best, dot(a, w));
  }
  double v = best + offset_;
  if (mu_ > 0.0) v += 0.5 * mu_ * squared_norm(w);
  return v;
}

Vector MaxAffineProblem::subgrad(const Vector& w) const {
  require_same_dim(w.size(), dim(), "MaxAffineProblem");
  std::size_t arg = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < slopes_.size(); ++i) {
    const double v = dot(slopes_[i], w);
    if (v > best) {
      best = v;
      arg = i;
    }
  }
  Vector g = slopes_[arg];
  if (mu_ > 0.0) axpy(mu_, w, g);
  return g;
}

double MaxAffineProblem::lipschitz_bound(double radius) const {
  double m = 0.0;
  for (const auto& a : slopes_) m = std::max(m, norm(a));
  if (mu_ > 0.0) m += mu_ * radius;
  return m;
}

Oracle MaxAffineProblem::oracle() const {
  Oracle o;
  auto self = std::make_shared<const MaxAffineProblem>(*this);
  o.value = [self](const Vector& w) { return self->value(w); };
  o.subgrad = [self](const Vector& w) { return self->subgrad(w); };
  const double sigma = noise_sigma_;
  if (sigma > 0.0) {
    // unbiased estimate: full subgradient plus N(0, sigma^2/N I) noise,
    // so E||ghat - g||^2 = sigma^2
    o.sample_subgrad = [self, sigma](const Vector& w, Rng& rng) {
      Vector g = self->subgrad(w);
      std::normal_distribution<double> gauss(
          0.0, sigma / std::sqrt(static_cast<double>(g.size())));
      for (double& x : g) x += gauss(rng);
      return g;
    };
    o.variance_sigma2 = sigma * sigma;
  }
  o.mu = mu_;
  o.lipschitz_m = lipschitz_bound();
  return o;
}

ProblemInstance MaxAffineProblem::instance(const Vector& w0) const {
  require_same_dim(w0.size(), dim(), "MaxAffineProblem::instance");
  ProblemInstance p;
  p.dim = dim();
  p.loss = oracle();
  p.objective = p.loss.value;
  p.w0 = w0;
  p.mu = mu_;
  p.lipschitz_m = lipschitz_bound(std::max(1.0, 2.0 * norm(w0)));
  p.fstar = offset_;
  p.wstar = wstar_;
  return p;
}

MaxAffineProblem make_max_affine(std::size_t dimension, std::size_t num_pieces,
                                 double mu, std::uint64_t seed,
                                 double noise_sigma) {
  if (num_pieces < 2) {
    throw std::invalid_argument("make_max_affine: num_pieces must be >= 2");
  }
  Rng rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.5, 1.5);
  std::vector<Vector> slopes;
  slopes.reserve(num_pieces);
  auto random_direction = [&](double scale) {
    Vector a(dimension);
    double n2 = 0.0;
    do {
      for (double& x : a) x = gauss(rng);
      n2 = squared_norm(a);
    } while (n2 == 0.0);
    const double s = scale / std::sqrt(n2);
    for (double& x : a) x *= s;
    return a;
  };
  for (std::size_t i = 0; i + 1 < num_pieces; i += 2) {
    Vector a = random_direction(unif(rng));
    slopes.push_back(scaled(a, -1.0));
    slopes.push_back(std::move(a));
  }
  if (slopes.size() < num_pieces) {
    slopes.push_back(random_direction(unif(rng)));
  }
  std::uniform_real_distribution<double> offs(0.0, 1.0);
  return MaxAffineProblem(std::move(slopes), offs(rng), mu, noise_sigma);
}

DiagonalQuadratic::DiagonalQuadratic(Vector diag) : diag_(std::move(diag)) {
  if (diag_.empty()) {
    throw std::invalid_argument("DiagonalQuadratic: empty diagonal");
  }
  l_ = 0.0;
  for (double d : diag_) {
    if (d < 0.0) {
      throw std::invalid_argument("DiagonalQuadratic: negative curvature");
    }
    l_ = std::max(l_, d);
  }
  if (!(l_ > 0.0)) {
    throw std::invalid_argument("DiagonalQuadratic: zero diagonal");
  }
}

double DiagonalQuadratic::value(const Vector& w) const {
  require_same_dim(w.size(), diag_.size(), "DiagonalQuadratic");
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) acc += diag_[i] * w[i] * w[i];
  return 0.5 * acc;
}

Vector DiagonalQuadratic::grad(const Vector& w) const {
  require_same_dim(w.size(), diag_.size(), "DiagonalQuadratic");
  Vector g(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) g[i] = diag_[i] * w[i];
  return g;
}

Oracle DiagonalQuadratic::oracle() const {
  Oracle o;
  auto self = std::make_shared<const DiagonalQuadratic>(*this);
  o.value = [self](const Vector& w) { return self->value(w); };
  o.subgrad = [self](const Vector& w) { return self->grad(w); };
  return o;
}

ProblemInstance DiagonalQuadratic::instance(const Vector& w0) const {
  require_same_dim(w0.size(), diag_.size(), "DiagonalQuadratic::instance");
  ProblemInstance p;
  p.dim = diag_.size();
  p.loss = oracle();
  p.objective = p.loss.value;
  p.w0 = w0;
  p.smooth_l = l_;
  p.fstar = 0.0;
  p.wstar = zeros(diag_.size());
  return p;
}

}  // namespace nsopt
