#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nsopt/types.hpp"
#include "nsopt/vector_ops.hpp"

namespace nsopt {

void require_same_dim(std::size_t a, std::size_t b, const std::string& what) {
  if (a != b) {
    throw std::invalid_argument(what + ": dimension mismatch (" +
                                std::to_string(a) + " vs " +
                                std::to_string(b) + ")");
  }
}

bool all_finite(const Vector& v) {
  return std::all_of(v.begin(), v.end(),
                     [](double x) { return std::isfinite(x); });
}

void require_finite(const Vector& v, const std::string& what) {
  if (!all_finite(v)) {
    throw std::runtime_error(what + ": non-finite entry");
  }
}

double dot(const Vector& a, const Vector& b) {
  require_same_dim(a.size(), b.size(), "dot");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double squared_norm(const Vector& a) {
  double acc = 0.0;
  for (double x : a) acc += x * x;
  return acc;
}

double norm(const Vector& a) { return std::sqrt(squared_norm(a)); }

double distance(const Vector& a, const Vector& b) {
  require_same_dim(a.size(), b.size(), "distance");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

void axpy(double alpha, const Vector& x, Vector& y) {
  require_same_dim(x.size(), y.size(), "axpy");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

Vector add_scaled(const Vector& y, double alpha, const Vector& x) {
  require_same_dim(x.size(), y.size(), "add_scaled");
  Vector out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] + alpha * x[i];
  return out;
}

Vector scaled(const Vector& v, double alpha) {
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = alpha * v[i];
  return out;
}

Vector zeros(std::size_t n) { return Vector(n, 0.0); }

SparseVector::SparseVector(std::vector<std::uint32_t> idx,
                           std::vector<double> val)
    : indices(std::move(idx)), values(std::move(val)) {
  if (indices.size() != values.size()) {
    throw std::invalid_argument("SparseVector: index/value length mismatch");
  }
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i > 0 && indices[i] <= indices[i - 1]) {
      throw std::invalid_argument(
          "SparseVector: indices must be strictly increasing");
    }
    if (values[i] == 0.0) {
      throw std::invalid_argument("SparseVector: explicit zero value");
    }
    if (!std::isfinite(values[i])) {
      throw std::invalid_argument("SparseVector: non-finite value");
    }
  }
}

std::size_t SparseVector::min_dimension() const {
  return indices.empty() ? 0 : static_cast<std::size_t>(indices.back()) + 1;
}

double SparseVector::dot(const Vector& w) const {
  if (min_dimension() > w.size()) {
    throw std::invalid_argument("SparseVector::dot: dimension mismatch");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    acc += values[i] * w[indices[i]];
  }
  return acc;
}

void SparseVector::add_to(Vector& w, double alpha) const {
  if (min_dimension() > w.size()) {
    throw std::invalid_argument("SparseVector::add_to: dimension mismatch");
  }
  for (std::size_t i = 0; i < indices.size(); ++i) {
    w[indices[i]] += alpha * values[i];
  }
}

double SparseVector::squared_norm() const {
  double acc = 0.0;
  for (double v : values) acc += v * v;
  return acc;
}

double dot(const SparseVector& a, const Vector& b) { return a.dot(b); }

SubgradientReport check_subgradient_validity(
    const Oracle& oracle, const std::vector<std::pair<Vector, Vector>>& pairs) {
  SubgradientReport report;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const Vector& u = pairs[i].first;
    const Vector& w = pairs[i].second;
    const Vector g = oracle.subgrad(w);
    double slack = oracle.value(u) - oracle.value(w) - dot(g, add_scaled(u, -1.0, w));
    if (oracle.mu > 0.0) {
      double d2 = 0.0;
      for (std::size_t j = 0; j < u.size(); ++j) {
        const double d = u[j] - w[j];
        d2 += d * d;
      }
      slack -= 0.5 * oracle.mu * d2;
    }
    if (slack < report.worst_slack) {
      report.worst_slack = slack;
      report.worst_pair = i;
    }
  }
  return report;
}

FeasibleSet FeasibleSet::whole_space() {
  return FeasibleSet(Kind::whole_space, 0.0, {});
}

FeasibleSet FeasibleSet::l2_ball(double radius, Vector center) {
  if (!(radius > 0.0)) {
    throw std::invalid_argument("FeasibleSet: ball radius must be positive");
  }
  return FeasibleSet(Kind::l2_ball, radius, std::move(center));
}

Regularizer Regularizer::zero() { return Regularizer(Kind::zero, 0.0); }

Regularizer Regularizer::l1(double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("Regularizer: lambda < 0");
  return Regularizer(Kind::l1, lambda);
}

Regularizer Regularizer::squared_l2(double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("Regularizer: lambda < 0");
  return Regularizer(Kind::squared_l2, lambda);
}

double Regularizer::value(const Vector& w) const {
  switch (kind_) {
    case Kind::zero:
      return 0.0;
    case Kind::l1: {
      double acc = 0.0;
      for (double x : w) acc += std::abs(x);
      return lambda_ * acc;
    }
    case Kind::squared_l2:
      return 0.5 * lambda_ * squared_norm(w);
  }
  return 0.0;
}

double Regularizer::strong_convexity() const {
  return kind_ == Kind::squared_l2 ? lambda_ : 0.0;
}

SolverState SolverState::initial(Vector w0) {
  SolverState s;
  s.w_curr = w0;
  s.w_prev = std::move(w0);
  return s;
}

void SolverState::advance(Vector w_next, double theta_used) {
  w_prev = std::move(w_curr);
  w_curr = std::move(w_next);
  theta_prev = theta_curr;
  theta_curr = theta_used;
  ++t;
}

}  // namespace nsopt
