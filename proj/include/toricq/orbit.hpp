#pragma once

#include <optional>

#include "toricq/lattice_groups.hpp"
#include "toricq/moment.hpp"
#include "toricq/polytope.hpp"

namespace toricq {

/// Everything derived once from a validated polytope.
struct ToricModel {
    explicit ToricModel(Polytope p);

    Polytope polytope;
    FaceLattice faces;
    SequenceData sequence;
    MomentData moment;
};

enum class Exactness { exact, approximate };
const char* to_string(Exactness e);

struct OrbitClass {
    ComplexVector z;
    IndexSet zeros;              // I_z
    bool closed = false;         // I_z equals the index set of `face`
    int face = 0;                // face cut out by the equalities in I_z
    ComplexVector closed_rep;    // z with the coordinates of the face index set zeroed
    RetractionResult retracted;  // zero-level point in the closure of the orbit of closed_rep
    Exactness exactness = Exactness::approximate;
};

/// Throws DomainError when z is outside the admissible open set.
OrbitClass classify_orbit(const ToricModel& model, const ComplexVector& z, const SolverConfig& cfg = {});

/// Y in the kernel of pi, zero off the face index set and >= 1 on the
/// coordinates that are nonzero but forced to vanish on the face, so that
/// exp(-2 pi t Y) drives them to 0. Nullopt for closed orbits.
std::optional<FieldVector> closing_flow(const ToricModel& model, const OrbitClass& orbit);

/// w -> prod |w_j|^{c_j} with c_j = <xi - eta, X_j>.
class PFunction {
public:
    PFunction(const Polytope& p, const FieldVector& xi, const FieldVector& eta);

    const FieldVector& exponents() const { return exponents_; }
    /// log P(w); throws DomainError when some w_j = 0 has c_j < 0, and
    /// returns -inf when some w_j = 0 has c_j > 0.
    double log_value(const ComplexVector& w) const;
    double operator()(const ComplexVector& w) const;

private:
    FieldVector exponents_;
    Eigen::VectorXd shadow_;
};

/// Zero-level point with field-exact squared moduli and phases in turns.
struct ExactPoint {
    FieldVector modulus_sq;
    FieldVector turns;
};

struct OrbitVerdict {
    bool equal = false;
    Exactness exactness = Exactness::approximate;
};

/// Same N-orbit for two points of the zero level: same support, same
/// moduli and a phase difference delta with pi(delta) in Q + span{X_j : x_j = 0}.
/// The float version tests the phase condition against the closure of that
/// group within `tol`. Throws PreconditionError off the zero level.
OrbitVerdict n_orbit_equal(const ToricModel& model, const ComplexVector& x, const ComplexVector& y, double tol = 1e-6);
OrbitVerdict n_orbit_equal(const ToricModel& model, const ExactPoint& x, const ExactPoint& y);

struct CanonicalPair {
    ComplexVector x;
    Eigen::VectorXd xi;
    int face = 0;
    ComplexVector normalized;  // x divided by the phase of its first nonzero coordinate
};

struct EquivalenceVerdict {
    bool equivalent = false;
    Exactness exactness = Exactness::approximate;
    CanonicalPair first;
    CanonicalPair second;
};

EquivalenceVerdict equivalent(const ToricModel& model, const ComplexVector& z, const ComplexVector& w,
                              const SolverConfig& cfg = {}, double tol = 1e-6);

ComplexVector normalize_phase(const ComplexVector& x);

struct StratumLabel {
    bool maximal = true;  // E regular
    int face = 0;         // E
};

StratumLabel stratum_of(const ToricModel& model, const ComplexVector& z);

}  // namespace toricq
