#ifndef IWA_CONTROL_REPORT_HPP
#define IWA_CONTROL_REPORT_HPP

// Aggregates torsion data, tower rank and per-place local classifications
// into quantitative control data: bounds on the restriction-map kernels and
// cokernels, the corank budget contributed by ramified places, and the
// Sigma-modified variant with ramified local conditions excised.

#include <optional>
#include <string>
#include <vector>

#include "iwa/tate_local.hpp"

namespace iwa {

struct ControlInput {
    std::uint64_t p = 2;            // tower prime
    unsigned d = 1;                 // tower rank
    std::uint64_t torsion_order = 1; // t = |E[p^infty]| at the top, a p-power
    std::vector<TateLocalData> places;
    std::optional<std::vector<std::size_t>> sigma; // indices into places
    bool base_selmer_cofinitely_generated = false;
    bool sigma_base_finite = false;
    std::optional<unsigned> j_level; // cross-check from j_power_level
};

enum class ControlVerdict { FinitelyGenerated, FiniteKernelsCokernels, Unbounded };

struct PlaceReport {
    std::size_t index = 0;
    KerDwClass classification;
    bool excised = false;               // Sigma variant: local condition dropped
    bool inert_unbounded_warning = false; // d >= 2 over an inert place
};

struct ControlReport {
    std::uint64_t ker_a_bound = 1;   // t^d
    std::uint64_t ker_b_bound = 1;   // t^d
    std::uint64_t coker_b_bound = 1; // t^{d(d-1)/2}
    std::vector<PlaceReport> places;
    unsigned total_corank_bound = 0; // sum of d_v over ramified bad places
    ControlVerdict verdict = ControlVerdict::FiniteKernelsCokernels;
    bool is_sigma = false;
    bool dual_module_torsion = false; // Sigma variant with finite base
    std::vector<std::string> warnings; // diagnostics; not part of the payload
};

ControlReport control_report(const ControlInput& input);
// Sigma variant. Falls back to the ordinary report (with a warning) when
// sigma does not cover every ramified place.
ControlReport sigma_report(const ControlInput& input);

const char* verdict_name(ControlVerdict v);

} // namespace iwa

#endif
