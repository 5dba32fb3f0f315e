#pragma once

// Reference values computed without the library's series machinery.

#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "powerdeform/families.hpp"

namespace oracle {

using powerdeform::Complex;

/// Coefficients of (1 - z)^{-a} up to z^n: (a)_k / k!.
std::vector<Complex> binomial_neg(Complex a, int n);

/// Bernoulli numbers B_0..B_n with B_1 = +1/2, so x/(1 - e^{-x}) = sum B_k x^k/k!.
std::vector<long double> bernoulli_plus(int n);

/// Grunsky coefficients of an exactly known f by a two-dimensional discrete
/// Cauchy integral of -log[(1/f(z) - 1/f(w))/(1/z - 1/w)] on |z| = |w| = rho.
std::vector<std::vector<Complex>> grunsky_by_cauchy(const std::function<Complex(Complex)>& f,
                                                    int size, double rho, int points);

/// Critical point of K_c[kappa]: p_c(z) = 0 with p = (1+z)/(1-z).
Complex koebe_critical_point(Complex c);

/// Horner sum written independently of the library.
Complex horner(const std::vector<Complex>& a, Complex z);

/// Random A_1 polynomial z + sum a_k z^k with sum |a_k| <= 0.4 * sqrt(2).
powerdeform::DeformationFamily random_family(std::mt19937_64& rng, int order);
/// Random coefficients bounded by `bound` in modulus per part; a_0 set to `constant`.
powerdeform::Series random_series(std::mt19937_64& rng, int order, double bound, Complex constant);
Complex random_complex(std::mt19937_64& rng, double radius);

}  // namespace oracle
