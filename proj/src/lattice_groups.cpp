#include "toricq/lattice_groups.hpp"

#include <cmath>
#include <numbers>

#include "toricq/combinatorics.hpp"
#include "toricq/linalg.hpp"

namespace toricq {

namespace {

FieldMatrix chart_matrix(const Polytope& p, const IndexSet& chart) {
    FieldMatrix m(p.dim(), static_cast<Eigen::Index>(chart.size()));
    for (std::size_t k = 0; k < chart.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = p.normal(chart[k]);
    return m;
}

bool is_chart(const Polytope& p, const IndexSet& chart) {
    if (static_cast<int>(chart.size()) != p.dim()) return false;
    if (!std::is_sorted(chart.begin(), chart.end())) return false;
    for (int j : chart)
        if (j < 0 || j >= p.facet_count()) return false;
    bool at_vertex = false;
    for (const auto& act : p.vertex_active_sets())
        if (is_subset(chart, act)) at_vertex = true;
    return at_vertex && exact_rank(chart_matrix(p, chart)) == p.dim();
}

FieldScalar frac(const FieldScalar& s) { return s - FieldScalar(Rational(floor(s))); }

GroupPresentation present(const Polytope& p, const IndexSet& chart, const IndexSet& coordinates) {
    GroupPresentation g;
    g.chart = chart;
    g.coordinates = coordinates;
    auto inv = exact_inverse(chart_matrix(p, chart));
    if (!inv) throw InternalError("chart normals are not a basis");
    const int d = p.facet_count();
    std::vector<std::vector<Rational>> rational_images;
    for (const auto& q : p.quasilattice().generators()) {
        FieldVector theta = exact_product(*inv, q);
        FieldVector img = FieldVector::Zero(d);
        std::vector<Rational> coords;
        bool zero = true;
        bool rational = true;
        for (std::size_t k = 0; k < chart.size(); ++k) {
            if (!std::binary_search(coordinates.begin(), coordinates.end(), chart[k])) continue;
            FieldScalar c = frac(theta(static_cast<Eigen::Index>(k)));
            if (!is_zero(c)) zero = false;
            if (!c.is_rational()) rational = false;
            coords.push_back(c.rational_part());
            img(chart[k]) = c;
        }
        if (zero) continue;
        bool duplicate = false;
        for (const auto& e : g.generators_mod_z)
            if (e == img) duplicate = true;
        if (duplicate) continue;
        g.generators_mod_z.push_back(img);
        if (!rational) g.finite = false;
        else rational_images.push_back(coords);
    }
    if (g.finite) {
        auto [order, factors] = finite_quotient_structure(rational_images, static_cast<int>(coordinates.size()));
        g.order = order;
        g.invariant_factors = factors;
    }
    return g;
}

}  // namespace

SequenceData kernel_data(const Polytope& p) {
    SequenceData s;
    s.pi = p.normal_matrix();
    if (exact_rank(s.pi) != p.dim()) throw ValidationError("normals do not span the ambient space");
    s.kernel = nullspace(s.pi);
    if (s.kernel.cols() != p.facet_count() - p.dim()) throw InternalError("kernel has the wrong dimension");
    if (!all_zero(exact_product(s.pi, s.kernel))) throw InternalError("pi o iota is not zero");
    s.iota_star = s.kernel.transpose();
    s.pi_star = s.pi.transpose();
    return s;
}

std::vector<IndexSet> chart_index_sets(const Polytope& p) {
    std::vector<IndexSet> out;
    for (const auto& act : p.vertex_active_sets())
        for_each_subset_of(act, p.dim(), [&](const IndexSet& s) {
            if (std::find(out.begin(), out.end(), s) != out.end()) return;
            if (exact_rank(chart_matrix(p, s)) == p.dim()) out.push_back(s);
        });
    std::sort(out.begin(), out.end());
    return out;
}

std::pair<Integer, std::vector<Integer>> finite_quotient_structure(const std::vector<std::vector<Rational>>& generators,
                                                                    int m) {
    if (m == 0 || generators.empty()) return {Integer(1), {}};
    std::vector<std::vector<Rational>> rows;
    for (int i = 0; i < m; ++i) {
        std::vector<Rational> e(m);
        e[i] = 1;
        rows.push_back(e);
    }
    rows.insert(rows.end(), generators.begin(), generators.end());
    auto [ints, den] = clear_denominators(rows);
    RowHermite h = row_hermite(ints);
    if (h.rank() != m) throw InternalError("lattice of chart coordinates lost rank");
    // L = B Z^m / den; express Z^m in that basis: C = den * B^{-1}
    FieldMatrix b(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) b(i, j) = FieldScalar(Rational(h.form(i, j)));
    auto binv = exact_inverse(b);
    if (!binv) throw InternalError("Hermite basis is singular");
    IntMatrix c(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Rational v = (*binv)(i, j).rational_part() * den;
            if (v.get_den() != 1) throw InternalError("relation matrix is not integral");
            c(i, j) = v.get_num();
        }
    std::vector<Integer> factors;
    for (const auto& f : smith_invariants(c))
        if (f != 1) factors.push_back(f);
    return {abs(int_determinant(c)), factors};
}

GroupPresentation gamma_group(const Polytope& p, const IndexSet& chart) {
    if (!is_chart(p, chart)) throw PreconditionError("index set " + format_index_set(chart) + " is not a chart");
    return present(p, chart, chart);
}

GroupPresentation gamma_check(const Polytope& p, const IndexSet& chart, const Face& face) {
    if (!is_chart(p, chart)) throw PreconditionError("index set " + format_index_set(chart) + " is not a chart");
    if (static_cast<int>(set_intersection_of(chart, face.index_set).size()) != p.dim() - face.dim)
        throw PreconditionError("chart " + format_index_set(chart) + " does not meet the face index set in n - p elements");
    return present(p, chart, set_difference_of(chart, face.index_set));
}

bool n_membership(const SequenceData& seq, const Quasilattice& q, const FieldVector& theta) {
    if (theta.size() != seq.facet_count()) throw PreconditionError("angle vector has the wrong length");
    return q.contains(exact_product(seq.pi, theta));
}

Eigen::MatrixXd kernel_shadow(const SequenceData& seq) { return shadow(seq.kernel); }

NCSampler::NCSampler(const Polytope& p, const SequenceData& seq)
    : d_(p.facet_count()), kernel_(seq.kernel), kernel_float_(shadow(seq.kernel)) {
    auto charts = chart_index_sets(p);
    if (charts.empty()) throw InternalError("polytope has no chart");
    chart_ = charts.front();
    auto inv = exact_inverse(chart_matrix(p, chart_));
    for (const auto& q : p.quasilattice().generators()) {
        FieldVector local = exact_product(*inv, q);
        FieldVector full = FieldVector::Zero(d_);
        for (std::size_t k = 0; k < chart_.size(); ++k) full(chart_[k]) = local(static_cast<Eigen::Index>(k));
        pulled_back_.push_back(full);
    }
}

NCElement NCSampler::operator()(std::mt19937_64& rng, double kernel_range, bool with_real_part) const {
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<int> num(-12, 12);
    std::uniform_int_distribution<int> den(1, 6);
    std::uniform_real_distribution<double> y(-kernel_range, kernel_range);
    NCElement g;
    g.theta = FieldVector::Zero(d_);
    for (const auto& v : pulled_back_) {
        int a = coeff(rng);
        if (a != 0) g.theta += v * FieldScalar(a);
    }
    for (Eigen::Index k = 0; k < kernel_.cols(); ++k) {
        FieldScalar c(Rational(num(rng), den(rng)));
        g.theta += kernel_.col(k) * c;
    }
    Eigen::VectorXd coeffs(kernel_.cols());
    for (Eigen::Index k = 0; k < coeffs.size(); ++k) coeffs(k) = with_real_part ? y(rng) : 0.0;
    g.y = kernel_float_ * coeffs;
    return g;
}

ComplexVector act(const NCElement& g, const ComplexVector& w) {
    ComplexVector out(w.size());
    for (Eigen::Index j = 0; j < w.size(); ++j) {
        const double turn = to_double(frac(g.theta(j)));
        out(j) = w(j) * std::polar(std::exp(-2.0 * std::numbers::pi * g.y(j)), 2.0 * std::numbers::pi * turn);
    }
    return out;
}

}  // namespace toricq
