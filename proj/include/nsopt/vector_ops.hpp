#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace nsopt {

/// Dense model vector. Iterates are dense: extrapolation and prox steps
/// touch every coordinate through scalar combinations.
using Vector = std::vector<double>;

void require_same_dim(std::size_t a, std::size_t b, const std::string& what);
void require_finite(const Vector& v, const std::string& what);
bool all_finite(const Vector& v);

double dot(const Vector& a, const Vector& b);
double squared_norm(const Vector& a);
double norm(const Vector& a);
double distance(const Vector& a, const Vector& b);

/// y += alpha * x
void axpy(double alpha, const Vector& x, Vector& y);
/// y + alpha * x as a new vector
Vector add_scaled(const Vector& y, double alpha, const Vector& x);
Vector scaled(const Vector& v, double alpha);
Vector zeros(std::size_t n);

}  // namespace nsopt
