#pragma once

#include "grunsky_op.hpp"

namespace grz {

// Computable period datum: positions of the centers that survive the
// three-point normalization, plus the operator of the normalized tuple.
struct PeriodDatum {
    std::vector<Cd> normalized_centers;   // centers 4..n; empty for n <= 3
    GrunskyOperator grunsky;
};

struct RecoveryReport {
    std::vector<Cd> dprime;              // recovered f_i'(0)
    std::vector<Cd> dsecond;             // recovered f_i''(0); empty for n = 1
    std::vector<Cd> schwarzian_at_zero;  // recovered S(f_i)(0)
    // absolute errors against a supplied ground-truth tuple; empty otherwise
    std::vector<double> dprime_residual;
    std::vector<double> dsecond_residual;
    std::vector<double> schwarzian_residual;
};

// Unique transform pinning centers to (0, 1, -1) for n >= 3. For n = 2 the
// convention is f1(0) = 0, f1'(0) = 1, f2(0) = 1; for n = 1 it is
// f1(0) = 0, f1'(0) = 1. Returns the rewritten tuple and the transform;
// `order` bounds the materialized series of the composed maps.
std::pair<Rigging, Mobius> normalize_rigging(const Rigging& rigging, int order = 68);

PeriodDatum period(const Rigging& rigging, int N, Route route,
                   const DiskQuadrature* quad = nullptr);

// full center list of a normalized tuple: (0 | 0,1 | 0,1,-1) then the stored tail
std::vector<Cd> period_centers(const PeriodDatum& datum);

// assembles the operator before and after post-composition and returns the
// largest entry-wise deviation
double check_mobius_invariance(const Rigging& rigging, const Mobius& t, int N);

// Reconstructs first and second jets and Schwarzian values from matrix
// entries alone. `centers` lists all n centers. The individual f_i'(0) split
// of the pairwise products uses the f_1'(0) normalization convention; for a
// single map only the Schwarzian is identifiable (the diagonal kernel is
// invariant under post-composition by affine maps).
RecoveryReport recover_jets(const GrunskyOperator& op, const std::vector<Cd>& centers,
                            const Rigging* truth = nullptr);

struct ProbeResult {
    double residual;   // max entry deviation between the two difference quotients
    double scale;      // largest operator entry seen, for relative thresholds
};

// Cauchy-Riemann residual of t -> operator entries along the family at map
// `family_index`, using symmetric difference quotients with h = delta / 2.
// The four evaluations run concurrently; each perturbed tuple is revalidated.
ProbeResult holomorphy_probe(int family_index, const Rigging& rigging,
                             const PreSchwarzianFamily& family, double delta, int N);

} // namespace grz
