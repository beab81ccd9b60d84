#include "toricq/scalars.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace toricq {

namespace {

using Poly = std::vector<Rational>;

void trim(Poly& p) {
    while (p.size() > 1 && p.back() == 0) p.pop_back();
    if (p.empty()) p.push_back(0);
}

bool is_zero_poly(const Poly& p) {
    return std::all_of(p.begin(), p.end(), [](const Rational& c) { return c == 0; });
}

int deg(const Poly& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (p[i] != 0) return i;
    return -1;
}

Rational eval(const Poly& p, const Rational& x) {
    Rational acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Poly derivative(const Poly& p) {
    if (p.size() <= 1) return {0};
    Poly d(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<long>(i);
    trim(d);
    return d;
}

// Remainder of a / b (b nonzero).
Poly poly_mod(Poly a, const Poly& b) {
    const int db = deg(b);
    const Rational lead = b[db];
    for (int da = deg(a); da >= db && da >= 0; da = deg(a)) {
        Rational f = a[da] / lead;
        for (int i = 0; i <= db; ++i) a[da - db + i] -= f * b[i];
        a[da] = 0;
    }
    trim(a);
    return a;
}

std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b) {
    const int db = deg(b);
    const int da0 = deg(a);
    Poly q(std::max(da0 - db + 1, 1), Rational(0));
    const Rational lead = b[db];
    for (int da = deg(a); da >= db && da >= 0; da = deg(a)) {
        Rational f = a[da] / lead;
        q[da - db] = f;
        for (int i = 0; i <= db; ++i) a[da - db + i] -= f * b[i];
        a[da] = 0;
    }
    trim(a);
    trim(q);
    return {q, a};
}

Poly poly_sub(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

Poly poly_gcd(Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!is_zero_poly(b)) {
        Poly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Extended Euclid: returns (g, s) with s*a = g (mod m).
std::pair<Poly, Poly> ext_gcd(Poly a, Poly m) {
    Poly r0 = std::move(m), r1 = std::move(a);
    Poly s0{0}, s1{1};
    trim(r1);
    while (!is_zero_poly(r1)) {
        auto [q, r] = poly_divmod(r0, r1);
        Poly s = poly_sub(s0, poly_mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    return {r0, s0};
}

int sign_of(const Rational& q) { return sgn(q); }

// Number of sign variations of a Sturm sequence at x.
int variations(const std::vector<Poly>& seq, const Rational& x) {
    int count = 0;
    int last = 0;
    for (const Poly& p : seq) {
        int s = sign_of(eval(p, x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

std::vector<Poly> sturm_sequence(const Poly& p) {
    std::vector<Poly> seq{p, derivative(p)};
    while (deg(seq.back()) > 0) {
        Poly r = poly_mod(seq[seq.size() - 2], seq.back());
        if (is_zero_poly(r)) break;
        for (auto& c : r) c = -c;
        seq.push_back(r);
    }
    return seq;
}

std::vector<Integer> divisors(Integer v) {
    v = abs(v);
    std::vector<Integer> out;
    for (Integer i = 1; i * i <= v; ++i) {
        if (v % i == 0) {
            out.push_back(i);
            if (i * i != v) out.push_back(v / i);
        }
    }
    return out;
}

bool has_rational_root(const Poly& p, const std::vector<Integer>& ip) {
    if (ip.front() == 0) return true;
    const Integer bound(1000000000000L);
    if (abs(ip.front()) > bound || abs(ip.back()) > bound) return false;
    for (const Integer& a : divisors(ip.front()))
        for (const Integer& b : divisors(ip.back())) {
            Rational r(a, b);
            r.canonicalize();
            if (eval(p, r) == 0 || eval(p, -r) == 0) return true;
        }
    return false;
}

struct Enclosure {
    Rational lo, hi;
};

Enclosure mul(const Enclosure& a, const Enclosure& b) {
    Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

// Interval Horner evaluation of p over [iv.lo, iv.hi].
Enclosure enclose(const Poly& p, const RationalInterval& iv) {
    Enclosure x{iv.lo, iv.hi};
    Enclosure acc{p.back(), p.back()};
    for (int i = static_cast<int>(p.size()) - 2; i >= 0; --i) {
        acc = mul(acc, x);
        acc.lo += p[i];
        acc.hi += p[i];
    }
    return acc;
}

}  // namespace

// ---------------------------------------------------------------- NumberField

std::shared_ptr<const NumberField> NumberField::make(std::vector<Integer> minpoly, Rational lo,
                                                     Rational hi) {
    lo.canonicalize();
    hi.canonicalize();
    while (minpoly.size() > 1 && minpoly.back() == 0) minpoly.pop_back();
    if (minpoly.size() < 2) throw FieldError("minimal polynomial must have degree >= 1");
    if (lo > hi) throw FieldError("root interval is reversed");

    auto field = std::shared_ptr<NumberField>(new NumberField());
    field->minpoly_ = minpoly;
    field->declared_ = {lo, hi};
    Poly p(minpoly.size());
    for (std::size_t i = 0; i < minpoly.size(); ++i) p[i] = Rational(minpoly[i]);
    const Rational lead = p.back();
    field->monic_ = p;
    for (auto& c : field->monic_) c /= lead;

    const int degree = field->degree();
    if (degree == 1) {
        Rational root = -p[0] / p[1];
        if (root < lo || root > hi) throw FieldError("isolating interval does not contain the root");
        field->working_ = {root, root};
        field->irreducible_verified_ = true;
        return field;
    }

    if (deg(poly_gcd(p, derivative(p))) > 0)
        throw FieldError("minimal polynomial is not squarefree, hence reducible");
    if (has_rational_root(p, minpoly)) throw FieldError("minimal polynomial has a rational root");
    field->irreducible_verified_ = degree <= 3;

    if (eval(p, lo) == 0 || eval(p, hi) == 0)
        throw FieldError("isolating interval endpoint is a root");
    auto seq = sturm_sequence(p);
    if (variations(seq, lo) - variations(seq, hi) != 1)
        throw FieldError("isolating interval must contain exactly one real root");

    RationalInterval iv{lo, hi};
    for (int i = 0; i < 64; ++i) iv = field->bisect(iv);
    field->working_ = iv;
    return field;
}

std::shared_ptr<const NumberField> NumberField::rationals() {
    static const auto q = make({0, 1}, -1, 1);
    return q;
}

RationalInterval NumberField::bisect(const RationalInterval& iv) const {
    if (iv.lo == iv.hi) return iv;
    Rational mid = (iv.lo + iv.hi) / 2;
    int s_mid = sign_of(eval(monic_, mid));
    if (s_mid == 0) {
        if (degree() > 1) throw FieldError("generator has a rational value; polynomial is reducible");
        return {mid, mid};
    }
    int s_lo = sign_of(eval(monic_, iv.lo));
    if (s_lo == 0) return {iv.lo, iv.lo};
    return s_lo == s_mid ? RationalInterval{mid, iv.hi} : RationalInterval{iv.lo, mid};
}

bool NumberField::same_as(const NumberField& other) const {
    if (this == &other) return true;
    if (degree() == 1 && other.degree() == 1) return true;
    if (minpoly_ != other.minpoly_) return false;
    return !(working_.hi < other.working_.lo || other.working_.hi < working_.lo);
}

// ---------------------------------------------------------------- FieldScalar

FieldPtr common_field(const FieldPtr& a, const FieldPtr& b) {
    if (!a) return b;
    if (!b || a == b) return a;
    if (a->degree() == 1) return b;
    if (b->degree() == 1) return a;
    if (a->same_as(*b)) return a;
    throw FieldError("scalars belong to different number fields");
}

FieldScalar::FieldScalar(FieldPtr field, std::vector<Rational> coefficients)
    : field_(std::move(field)), coeffs_(std::move(coefficients)) {
    const std::size_t n = field_ ? static_cast<std::size_t>(field_->degree()) : 1;
    if (coeffs_.size() > n) {
        for (std::size_t i = n; i < coeffs_.size(); ++i)
            if (coeffs_[i] != 0)
                throw FieldError("scalar has more coefficients than the field degree");
    }
    coeffs_.resize(n, Rational(0));
    for (auto& c : coeffs_) c.canonicalize();
}

FieldScalar FieldScalar::generator(const FieldPtr& field) {
    if (field->degree() == 1) return FieldScalar(field, {field->working_interval().lo});
    std::vector<Rational> c(field->degree(), Rational(0));
    c[1] = 1;
    return FieldScalar(field, std::move(c));
}

bool FieldScalar::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
}

bool FieldScalar::is_rational() const {
    return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const Rational& c) { return c == 0; });
}

namespace {

void adopt(FieldPtr& field, std::vector<Rational>& coeffs, const FieldPtr& other) {
    FieldPtr f = common_field(field, other);
    if (f != field) {
        field = f;
        coeffs.resize(f ? f->degree() : 1, Rational(0));
    }
}

}  // namespace

FieldScalar& FieldScalar::operator+=(const FieldScalar& o) {
    adopt(field_, coeffs_, o.field_);
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
}

FieldScalar& FieldScalar::operator-=(const FieldScalar& o) {
    adopt(field_, coeffs_, o.field_);
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
}

FieldScalar& FieldScalar::operator*=(const FieldScalar& o) {
    adopt(field_, coeffs_, o.field_);
    if (o.is_rational()) {
        for (auto& c : coeffs_) c *= o.coeffs_.front();
        return *this;
    }
    if (is_rational()) {
        Rational k = coeffs_.front();
        coeffs_ = o.coeffs_;
        coeffs_.resize(field_->degree(), Rational(0));
        for (auto& c : coeffs_) c *= k;
        return *this;
    }
    Poly prod = poly_mul(coeffs_, o.coeffs_);
    Poly r = poly_mod(prod, field_->monic());
    r.resize(field_->degree(), Rational(0));
    coeffs_ = std::move(r);
    return *this;
}

FieldScalar FieldScalar::operator-() const {
    FieldScalar r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

FieldScalar FieldScalar::inverse() const {
    if (is_zero()) throw PreconditionError("division by zero in number field");
    if (is_rational()) {
        FieldScalar r = *this;
        r.coeffs_.assign(r.coeffs_.size(), Rational(0));
        r.coeffs_.front() = 1 / coeffs_.front();
        return r;
    }
    auto [g, s] = ext_gcd(coeffs_, field_->monic());
    if (deg(g) > 0) throw FieldError("non-invertible element: minimal polynomial is reducible");
    Rational g0 = g.front();
    for (auto& c : s) c /= g0;
    Poly r = poly_mod(s, field_->monic());
    r.resize(field_->degree(), Rational(0));
    return FieldScalar(field_, std::move(r));
}

bool operator==(const FieldScalar& a, const FieldScalar& b) {
    common_field(a.field_, b.field_);
    const std::size_t n = std::max(a.coeffs_.size(), b.coeffs_.size());
    for (std::size_t i = 0; i < n; ++i) {
        const Rational& x = i < a.coeffs_.size() ? a.coeffs_[i] : Rational(0);
        const Rational& y = i < b.coeffs_.size() ? b.coeffs_[i] : Rational(0);
        if (x != y) return false;
    }
    return true;
}

std::strong_ordering operator<=>(const FieldScalar& a, const FieldScalar& b) {
    int s = sign(a - b);
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

int sign(const FieldScalar& s) {
    if (s.is_zero()) return 0;
    if (s.is_rational()) return sign_of(s.rational_part());
    const NumberField& field = *s.field();
    const Poly& p = s.coefficients();
    if (deg(poly_gcd(p, field.monic())) > 0)
        throw FieldError("element vanishes on a factor of the minimal polynomial: field is reducible");
    RationalInterval iv = field.working_interval();
    for (int i = 0; i < NumberField::kRefinementCap; ++i) {
        Enclosure e = enclose(p, iv);
        if (e.lo > 0) return 1;
        if (e.hi < 0) return -1;
        iv = field.bisect(iv);
    }
    throw FieldError("sign determination exceeded the refinement cap");
}

double round_up(const Rational& q) {
    double d = q.get_d();
    if (Rational(d) < q) d = std::nextafter(d, std::numeric_limits<double>::infinity());
    return d;
}

namespace {

// mpq_get_d truncates; pick whichever neighbour is closer.
double nearest_double(const Rational& q) {
    double d = q.get_d();
    double up = std::nextafter(d, sgn(q) < 0 ? -std::numeric_limits<double>::infinity()
                                             : std::numeric_limits<double>::infinity());
    if (std::isfinite(up) && abs(Rational(up) - q) < abs(Rational(d) - q)) return up;
    return d;
}

}  // namespace

FloatShadow float_shadow(const FieldScalar& s, int precision_bits) {
    if (precision_bits < 24) throw PreconditionError("float_shadow precision must be >= 24 bits");
    if (s.is_rational()) {
        const Rational& q = s.rational_part();
        double v = nearest_double(q);
        Rational diff = q - Rational(v);
        return {v, round_up(abs(diff))};
    }
    const NumberField& field = *s.field();
    const Poly& p = s.coefficients();
    RationalInterval iv = field.working_interval();
    Enclosure e = enclose(p, iv);
    for (int i = 0; i < NumberField::kRefinementCap; ++i) {
        Rational scale = std::max(Rational(1), std::max(Rational(abs(e.lo)), Rational(abs(e.hi))));
        Rational target = scale;
        mpq_div_2exp(target.get_mpq_t(), scale.get_mpq_t(), precision_bits + 4);
        if (e.hi - e.lo <= target) break;
        iv = field.bisect(iv);
        e = enclose(p, iv);
    }
    Rational mid = (e.lo + e.hi) / 2;
    double v = nearest_double(mid);
    Rational rv(v);
    Rational err = std::max(Rational(abs(rv - e.lo)), Rational(abs(e.hi - rv)));
    return {v, round_up(err)};
}

double to_double(const FieldScalar& s) { return float_shadow(s, 53).value; }

Integer floor(const FieldScalar& s) {
    if (s.is_rational()) {
        const Rational& q = s.rational_part();
        Integer f;
        mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
        return f;
    }
    Integer k(std::floor(to_double(s)));
    while (sign(s - FieldScalar(Rational(k))) < 0) --k;
    while (sign(s - FieldScalar(Rational(k + 1))) >= 0) ++k;
    return k;
}

FieldScalar abs(const FieldScalar& s) { return sign(s) < 0 ? -s : s; }

std::string to_string(const FieldScalar& s) {
    if (s.is_rational()) return s.rational_part().get_str();
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < s.coefficients().size(); ++i) {
        const Rational& c = s.coefficients()[i];
        if (c == 0) continue;
        if (!first) out << (sgn(c) < 0 ? " - " : " + ");
        else if (sgn(c) < 0) out << "-";
        Rational a = abs(c);
        if (i == 0) out << a.get_str();
        else {
            out << a.get_str() << "*a";
            if (i > 1) out << "^" << i;
        }
        first = false;
    }
    return out.str();
}

std::ostream& operator<<(std::ostream& os, const FieldScalar& s) { return os << to_string(s); }

Rational parse_rational(const std::string& text) {
    Rational q;
    if (text.empty() || q.set_str(text, 10) != 0)
        throw ValidationError("cannot parse rational '" + text + "'");
    if (q.get_den() == 0) throw ValidationError("zero denominator in '" + text + "'");
    q.canonicalize();
    return q;
}

}  // namespace toricq
