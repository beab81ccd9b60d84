#pragma once

#include <compare>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <gmpxx.h>

#include "toricq/errors.hpp"

namespace toricq {

using Integer = mpz_class;
using Rational = mpq_class;

struct RationalInterval {
    Rational lo;
    Rational hi;
};

/// A real number field Q(a), where a is the unique root of an integer
/// polynomial inside a rational isolating interval.
///
/// Fields are immutable; share them through `FieldPtr`. A pre-refined
/// isolating interval is computed once at construction so that sign
/// queries usually resolve without further bisection.
class NumberField {
public:
    /// Maximum number of bisection halvings spent on a single query.
    static constexpr int kRefinementCap = 4096;

    /// Validates the declaration: nonzero leading coefficient, squarefree,
    /// exactly one real root in [lo, hi]. Irreducibility is proven for
    /// degree <= 3 (rational root test); above that it is trusted unless the
    /// polynomial is found to have a rational root, and
    /// `irreducibility_verified()` reports which case applies.
    static std::shared_ptr<const NumberField> make(std::vector<Integer> minimal_polynomial,
                                                   Rational lo, Rational hi);

    /// Q itself, presented as Q(0) with minimal polynomial x.
    static std::shared_ptr<const NumberField> rationals();

    int degree() const { return static_cast<int>(minpoly_.size()) - 1; }
    const std::vector<Integer>& minimal_polynomial() const { return minpoly_; }
    const RationalInterval& root_interval() const { return declared_; }
    const RationalInterval& working_interval() const { return working_; }
    bool irreducibility_verified() const { return irreducible_verified_; }

    /// Monic version of the minimal polynomial, lowest degree first.
    const std::vector<Rational>& monic() const { return monic_; }

    /// One bisection step of an isolating interval of the generator.
    RationalInterval bisect(const RationalInterval& iv) const;

    /// Structural equality: same minimal polynomial and same isolated root.
    bool same_as(const NumberField& other) const;

private:
    NumberField() = default;

    std::vector<Integer> minpoly_;
    std::vector<Rational> monic_;
    RationalInterval declared_;
    RationalInterval working_;
    bool irreducible_verified_ = false;
};

using FieldPtr = std::shared_ptr<const NumberField>;

/// Exact element of a number field, stored as rational coordinates with
/// respect to the power basis 1, a, a^2, ...
///
/// A default-constructed or rational-constructed scalar carries no field;
/// it behaves as an element of Q and adopts the field of whatever it is
/// combined with.
class FieldScalar {
public:
    FieldScalar() : coeffs_{Rational(0)} {}
    FieldScalar(int v) : coeffs_{Rational(v)} {}  // NOLINT(google-explicit-constructor)
    FieldScalar(long v) : coeffs_{Rational(v)} {}  // NOLINT(google-explicit-constructor)
    FieldScalar(const Rational& q) : coeffs_{q} { coeffs_.front().canonicalize(); }  // NOLINT(google-explicit-constructor)
    FieldScalar(FieldPtr field, std::vector<Rational> coefficients);

    static FieldScalar generator(const FieldPtr& field);

    const FieldPtr& field() const { return field_; }
    int degree() const { return static_cast<int>(coeffs_.size()); }
    const std::vector<Rational>& coefficients() const { return coeffs_; }

    bool is_zero() const;
    /// True when every coefficient beyond the constant term vanishes.
    bool is_rational() const;
    const Rational& rational_part() const { return coeffs_.front(); }

    FieldScalar inverse() const;

    FieldScalar& operator+=(const FieldScalar& o);
    FieldScalar& operator-=(const FieldScalar& o);
    FieldScalar& operator*=(const FieldScalar& o);
    FieldScalar& operator/=(const FieldScalar& o) { return *this *= o.inverse(); }

    friend FieldScalar operator+(FieldScalar a, const FieldScalar& b) { return a += b; }
    friend FieldScalar operator-(FieldScalar a, const FieldScalar& b) { return a -= b; }
    friend FieldScalar operator*(FieldScalar a, const FieldScalar& b) { return a *= b; }
    friend FieldScalar operator/(FieldScalar a, const FieldScalar& b) { return a /= b; }
    FieldScalar operator-() const;

    /// Exact equality of the represented real numbers.
    friend bool operator==(const FieldScalar& a, const FieldScalar& b);
    /// Ordering by exact sign determination.
    friend std::strong_ordering operator<=>(const FieldScalar& a, const FieldScalar& b);

private:
    FieldPtr field_;
    std::vector<Rational> coeffs_;
};

inline bool is_zero(const FieldScalar& s) { return s.is_zero(); }

/// Exact sign of the represented real number.
int sign(const FieldScalar& s);

struct FloatShadow {
    double value = 0.0;
    double error = 0.0;  // |value - exact| <= error
};

/// Double approximation with a rigorous error bound. `precision_bits` >= 24
/// controls how far the generator interval is refined.
FloatShadow float_shadow(const FieldScalar& s, int precision_bits = 53);

double to_double(const FieldScalar& s);
Integer floor(const FieldScalar& s);
FieldScalar abs(const FieldScalar& s);

/// Human-readable form, e.g. "-1 + 1*a".
std::string to_string(const FieldScalar& s);
std::ostream& operator<<(std::ostream& os, const FieldScalar& s);

/// The common field of two scalars, or null when both are field-less.
/// Throws FieldError when they live in different fields.
FieldPtr common_field(const FieldPtr& a, const FieldPtr& b);

/// Parses "p/q", "p" or a decimal-free integer string.
Rational parse_rational(const std::string& text);
/// Rational converted to the nearest-below double then bumped up if needed.
double round_up(const Rational& q);

}  // namespace toricq

namespace Eigen {

template <>
struct NumTraits<toricq::FieldScalar> : GenericNumTraits<toricq::FieldScalar> {
    using Real = toricq::FieldScalar;
    using NonInteger = toricq::FieldScalar;
    using Nested = toricq::FieldScalar;
    using Literal = toricq::FieldScalar;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 32,
        MulCost = 64
    };
    static inline Real epsilon() { return Real(0); }
    static inline Real dummy_precision() { return Real(0); }
    static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace toricq {

using FieldMatrix = Eigen::Matrix<FieldScalar, Eigen::Dynamic, Eigen::Dynamic>;
using FieldVector = Eigen::Matrix<FieldScalar, Eigen::Dynamic, 1>;

template <typename Derived>
Eigen::MatrixXd shadow(const Eigen::MatrixBase<Derived>& m) {
    Eigen::MatrixXd out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
    return out;
}

}  // namespace toricq
