#include "iwa/control_report.hpp"

#include <algorithm>

namespace iwa {

namespace {

std::uint64_t checked_pow(std::uint64_t base, unsigned e) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (base != 0 && r > (std::uint64_t(1) << 62) / base)
            throw validation_error("control_report: bound overflows 64 bits");
        r *= base;
    }
    return r;
}

void validate_input(const ControlInput& in) {
    if (!is_prime_u64(in.p)) throw validation_error("control_report: p must be prime");
    if (in.d < 1) throw validation_error("control_report: tower rank must be >= 1");
    std::uint64_t t = in.torsion_order;
    if (t == 0) throw validation_error("control_report: torsion order must be >= 1");
    while (t % in.p == 0) t /= in.p;
    if (t != 1) throw validation_error("control_report: torsion order must be a power of p");
    for (const auto& pl : in.places) validate_place(pl, in.p, in.d);
    if (in.sigma)
        for (std::size_t i : *in.sigma)
            if (i >= in.places.size())
                throw validation_error("control_report: sigma index out of range");
    // Theorem hypothesis: ramified places must be of split multiplicative
    // reduction; a ramified place of good reduction is outside the theory.
    for (const auto& pl : in.places)
        if (pl.behavior.kind == PlaceBehaviorKind::Ramified &&
            pl.reduction != ReductionType::SplitMultiplicative)
            throw hypothesis_error(
                "control_report: ramified place of good reduction violates the hypothesis");
}

void fill_bounds(const ControlInput& in, ControlReport& out) {
    out.ker_a_bound = checked_pow(in.torsion_order, in.d);
    out.ker_b_bound = out.ker_a_bound;
    out.coker_b_bound = checked_pow(in.torsion_order, in.d * (in.d - 1) / 2);
}

void add_common_warnings(const ControlInput& in, ControlReport& out) {
    for (auto& pr : out.places) {
        const auto& pl = in.places[pr.index];
        if (in.d >= 2 && pl.behavior.kind == PlaceBehaviorKind::UnramifiedInert) {
            pr.inert_unbounded_warning = true;
            out.warnings.push_back("place " + std::to_string(pr.index) +
                                   ": infinitely many places above an inert place when d >= 2; "
                                   "corank growth along the tower is not bounded per level");
        }
    }
    if (in.j_level) {
        std::uint64_t cap = checked_pow(in.p, 2 * *in.j_level);
        if (in.torsion_order > cap)
            out.warnings.push_back(
                "torsion order exceeds p^{2n} allowed by the j-invariant level n = " +
                std::to_string(*in.j_level));
    }
}

} // namespace

ControlReport control_report(const ControlInput& input) {
    validate_input(input);
    ControlReport out;
    fill_bounds(input, out);
    for (std::size_t i = 0; i < input.places.size(); ++i) {
        PlaceReport pr;
        pr.index = i;
        pr.classification = ker_dw_classify(input.places[i], input.p, input.p, input.d);
        if (pr.classification.kind == KerDwClass::Kind::CorankAtMost)
            out.total_corank_bound += pr.classification.corank;
        out.places.push_back(pr);
    }
    if (input.base_selmer_cofinitely_generated)
        out.verdict = ControlVerdict::FinitelyGenerated;
    else if (out.total_corank_bound > 0)
        out.verdict = ControlVerdict::Unbounded;
    else
        out.verdict = ControlVerdict::FiniteKernelsCokernels;
    add_common_warnings(input, out);
    return out;
}

ControlReport sigma_report(const ControlInput& input) {
    validate_input(input);
    std::vector<std::size_t> sigma = input.sigma.value_or(std::vector<std::size_t>{});
    // sigma must cover every ramified place; otherwise this is just the
    // ordinary report
    for (std::size_t i = 0; i < input.places.size(); ++i) {
        if (input.places[i].behavior.kind != PlaceBehaviorKind::Ramified) continue;
        if (std::find(sigma.begin(), sigma.end(), i) == sigma.end()) {
            ControlReport out = control_report(input);
            out.warnings.push_back("sigma does not cover every ramified place; "
                                   "returning the ordinary control report");
            return out;
        }
    }
    ControlReport out;
    fill_bounds(input, out);
    bool any_excised = false;
    for (std::size_t i = 0; i < input.places.size(); ++i) {
        PlaceReport pr;
        pr.index = i;
        if (std::find(sigma.begin(), sigma.end(), i) != sigma.end()) {
            pr.excised = true;
            any_excised = true;
        } else {
            pr.classification = ker_dw_classify(input.places[i], input.p, input.p, input.d);
        }
        out.places.push_back(pr);
    }
    out.total_corank_bound = 0;
    out.verdict = ControlVerdict::FiniteKernelsCokernels;
    out.is_sigma = any_excised || input.sigma_base_finite;
    out.dual_module_torsion = input.sigma_base_finite;
    add_common_warnings(input, out);
    return out;
}

const char* verdict_name(ControlVerdict v) {
    switch (v) {
        case ControlVerdict::FinitelyGenerated: return "finitely_generated";
        case ControlVerdict::FiniteKernelsCokernels: return "finite_kernels_cokernels";
        case ControlVerdict::Unbounded: return "unbounded";
    }
    return "unknown";
}

} // namespace iwa
