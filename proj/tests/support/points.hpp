#pragma once

#include <complex>
#include <numbers>
#include <random>

#include "toricq/polytope.hpp"

namespace fixtures {

using namespace toricq;

inline ComplexVector cvec(std::initializer_list<std::complex<double>> xs) {
    ComplexVector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (auto x : xs) v(i++) = x;
    return v;
}

// Random point whose zero set is exactly the index set of face f.
inline ComplexVector random_point_on(const FaceLattice& lat, int f, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> mod(0.2, 2.0), ang(0.0, 2 * std::numbers::pi);
    ComplexVector z(lat.facet_count());
    for (int j = 0; j < z.size(); ++j) z(j) = std::polar(mod(rng), ang(rng));
    for (int j : lat.face(f).index_set) z(j) = 0;
    return z;
}

inline FieldVector relint_point(const Polytope& p, const Face& f) {
    FieldVector c = FieldVector::Zero(p.dim());
    for (int v : f.vertices) c += p.vertices()[v];
    return c * FieldScalar(Rational(1, static_cast<long>(f.vertices.size())));
}

}  // namespace fixtures
