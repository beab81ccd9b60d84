#include "toricq/quasilattice.hpp"

#include "toricq/linalg.hpp"

namespace toricq {

Quasilattice::Quasilattice(FieldPtr field, int ambient_dim, std::vector<FieldVector> generators)
    : field_(std::move(field)), n_(ambient_dim), generators_(std::move(generators)) {
    if (field_ && field_->degree() == 1) field_ = nullptr;
    if (generators_.empty()) throw ValidationError("quasilattice needs at least one generator");
    FieldMatrix g(n_, static_cast<Eigen::Index>(generators_.size()));
    for (std::size_t k = 0; k < generators_.size(); ++k) {
        if (generators_[k].size() != n_) throw ValidationError("quasilattice generator has the wrong dimension");
        for (Eigen::Index i = 0; i < n_; ++i) common_field(field_, generators_[k](i).field());
        g.col(static_cast<Eigen::Index>(k)) = generators_[k];
    }
    if (exact_rank(g) != n_) throw ValidationError("quasilattice generators do not span the ambient space");

    std::vector<std::vector<Rational>> rows;
    for (const auto& v : generators_) rows.push_back(expand_coefficients(v, expansion_degree()));
    auto [m, den] = clear_denominators(rows);
    denominator_ = den;
    hermite_ = row_hermite(m);
}

Quasilattice Quasilattice::standard(int n, FieldPtr field) {
    std::vector<FieldVector> gens;
    for (int i = 0; i < n; ++i) {
        FieldVector e = FieldVector::Zero(n);
        e(i) = FieldScalar(1);
        gens.push_back(e);
    }
    return Quasilattice(std::move(field), n, std::move(gens));
}

std::optional<std::vector<Integer>> Quasilattice::coordinates(const FieldVector& v) const {
    if (v.size() != n_) return std::nullopt;
    for (Eigen::Index i = 0; i < n_; ++i) {
        const auto& f = v(i).field();
        if (f && f->degree() > 1 && !(field_ && field_->same_as(*f)))
            throw FieldError("vector lives in a different number field than the quasilattice");
    }
    std::vector<Integer> target;
    for (const auto& q : expand_coefficients(v, expansion_degree())) {
        Rational scaled = q * denominator_;
        if (scaled.get_den() != 1) return std::nullopt;
        target.push_back(scaled.get_num());
    }
    return row_lattice_solve(hermite_, target);
}

bool Quasilattice::contains(const FieldVector& v) const { return coordinates(v).has_value(); }

std::vector<FieldVector> Quasilattice::intersect_subspace(const FieldMatrix& annihilators) const {
    const int k = expansion_degree();
    const int m = static_cast<int>(generators_.size());
    // one rational equation per annihilator row and power-basis coordinate
    std::vector<std::vector<Rational>> eqs(static_cast<std::size_t>(annihilators.rows()) * k,
                                           std::vector<Rational>(m));
    for (Eigen::Index r = 0; r < annihilators.rows(); ++r)
        for (int g = 0; g < m; ++g) {
            FieldScalar pairing;
            for (Eigen::Index i = 0; i < n_; ++i) pairing += annihilators(r, i) * generators_[g](i);
            const auto& c = pairing.coefficients();
            for (int t = 0; t < k && t < static_cast<int>(c.size()); ++t) eqs[r * k + t][g] = c[t];
        }
    std::vector<FieldVector> out;
    IntMatrix kernel;
    if (eqs.empty()) {
        kernel = IntMatrix::identity(m);
    } else {
        kernel = integer_kernel(clear_denominators(eqs).first);
    }
    for (int b = 0; b < kernel.rows(); ++b) {
        FieldVector v = FieldVector::Zero(n_);
        for (int g = 0; g < m; ++g)
            if (kernel(b, g) != 0) v += generators_[g] * FieldScalar(Rational(kernel(b, g)));
        out.push_back(v);
    }
    return out;
}

}  // namespace toricq
