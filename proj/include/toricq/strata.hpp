#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "toricq/lattice_groups.hpp"
#include "toricq/moment.hpp"
#include "toricq/polytope.hpp"

namespace toricq {

struct StratificationReport;

/// Cone and link polytope of a singular face F. Vectors in d_F are stored
/// in the coordinates of `span_basis`; covectors in the dual coordinates.
struct LinkData {
    int face = 0;
    int face_dim = 0;                  // p
    IndexSet index_set;                // I_F
    FieldMatrix span_basis;            // n x (n-p), basis of span{X_j : j in I_F}
    Quasilattice span_quasilattice;    // Q intersected with that span, in basis coordinates
    std::vector<FieldVector> cone_normals;   // X_j, j in I_F, in basis coordinates
    std::vector<FieldScalar> cone_offsets;   // lambda_j, j in I_F
    std::vector<FieldScalar> slice_weights;  // s_j
    FieldVector slice_normal;          // X_0 = sum s_j X_j
    FieldScalar slice_level;           // sum s_j lambda_j + 1
    FieldVector slice_point;           // xi_0 on the slice
    FieldMatrix slice_basis;           // (n-p) x (n-p-1), pivoted basis of ann(X_0)
    std::shared_ptr<const Polytope> link_polytope;
    /// Face of the original polytope for each face id of the link polytope.
    std::vector<int> face_map;
    int cone_group_dim = 0;            // dim of N^F, kernel of e_j -> X_j on R^{I_F}
    int link_group_dim = 0;            // dim of N^F_0, kernel of the link polytope sequence
    bool kernel_split = false;         // kernel of the link sequence = N^F + span(s)
    int link_real_dim = 0;             // 2(n-p) - 1 from the link polytope
    int stated_link_real_dim = 0;      // 2(n-p) + 1
    std::shared_ptr<const StratificationReport> report;  // stratification of the link polytope

    bool dimension_discrepancy() const { return link_real_dim != stated_link_real_dim; }
};

struct StratumEntry {
    bool maximal = false;
    int face = -1;             // -1 for the maximal piece
    IndexSet index_set;
    int complex_dim = 0;
    int depth = 0;
    IndexSet chart;            // I
    IndexSet chart_base;       // I minus I_F; coordinates of the chart (C*)^{I \ I_F}
    std::optional<GroupPresentation> chart_group;
    /// Coordinates of each X_k in the basis {X_i : i in I}, n x d.
    FieldMatrix chart_coordinates;
    std::optional<LinkData> link;
};

struct StratificationReport {
    int n = 0;
    int d = 0;
    int polytope_depth = 0;
    std::vector<StratumEntry> strata;               // strata[0] is the maximal piece
    std::vector<std::pair<int, int>> poset_edges;   // cover relations (lower, upper) in strata indices

    std::optional<int> stratum_of_face(int face) const;
};

/// Throws PreconditionError when F is regular.
LinkData build_link(const Polytope& p, const FaceLattice& lat, int face);

StratificationReport build_stratification(const Polytope& p, const FaceLattice& lat);
StratificationReport build_stratification(const Polytope& p);

/// Twisted-product datum near a singular stratum.
struct LocalModel {
    int face = 0;
    IndexSet chart;
    IndexSet base_coordinates;        // (C*)^{I \ I_F}
    int base_dim = 0;
    GroupPresentation base_group;     // check-Gamma_I
    int cone_group_dim = 0;
    int cone_complex_dim = 0;         // r_F - dim N^F = n - p
    FieldMatrix chart_coordinates;    // a_{ik}
    std::vector<FieldScalar> chart_offsets;  // b_k = lambda_k - sum_i a_{ik} lambda_i
};

/// Throws PreconditionError when F is not a singular stratum of the report.
LocalModel local_model(const Polytope& p, const StratificationReport& report, int face);

enum class LinkMomentKind { cone, link_polytope };

/// Moment data on C^{I_F}: the cone with zero offsets, or the link polytope
/// with the extra coordinate sum s_j |z_j|^2 - 1.
MomentData derived_moment_data(LinkMomentKind kind, const LinkData& link);

std::string to_dot(const StratificationReport& report);

}  // namespace toricq
