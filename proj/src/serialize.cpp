#include "iwa/serialize.hpp"

#include <fstream>
#include <sstream>

namespace iwa {

namespace {

using nlohmann::json;

[[noreturn]] void bad_field(const std::string& path, const std::string& what) {
    throw validation_error(path + ": " + what);
}

const json& need(const json& j, const std::string& path, const std::string& key) {
    if (!j.is_object()) bad_field(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) bad_field(path + "." + key, "missing field");
    return *it;
}

std::uint64_t need_u64(const json& j, const std::string& path, const std::string& key) {
    const json& v = need(j, path, key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
        bad_field(path + "." + key, "expected a nonnegative integer");
    return v.get<std::uint64_t>();
}

std::int64_t need_i64(const json& j, const std::string& path, const std::string& key) {
    const json& v = need(j, path, key);
    if (!v.is_number_integer()) bad_field(path + "." + key, "expected an integer");
    return v.get<std::int64_t>();
}

std::string need_str(const json& j, const std::string& path, const std::string& key) {
    const json& v = need(j, path, key);
    if (!v.is_string()) bad_field(path + "." + key, "expected a string");
    return v.get<std::string>();
}

bool opt_bool(const json& j, const std::string& path, const std::string& key, bool dflt) {
    if (!j.is_object() || !j.contains(key)) return dflt;
    if (!j[key].is_boolean()) bad_field(path + "." + key, "expected a boolean");
    return j[key].get<bool>();
}

std::vector<unsigned> need_unsigned_list(const json& j, const std::string& path,
                                         const std::string& key) {
    const json& v = need(j, path, key);
    if (!v.is_array()) bad_field(path + "." + key, "expected an array");
    std::vector<unsigned> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number_unsigned())
            bad_field(path + "." + key + "[" + std::to_string(i) + "]",
                      "expected a nonnegative integer");
        out.push_back(v[i].get<unsigned>());
    }
    return out;
}

std::vector<std::uint64_t> element_from_json(const json& v, const std::string& path,
                                             const FiniteLevelRing& ring) {
    if (!v.is_array() || v.size() != ring.dim())
        bad_field(path, "expected an array of " + std::to_string(ring.dim()) + " coefficients");
    std::vector<std::uint64_t> e(ring.dim());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number_integer() && !v[i].is_number_unsigned())
            bad_field(path + "[" + std::to_string(i) + "]", "expected an integer");
        e[i] = ring.coeff().reduce_signed(v[i].get<std::int64_t>());
    }
    return e;
}

ordered_json element_to_json(const FiniteLevelRing::Element& e) {
    ordered_json a = ordered_json::array();
    for (std::uint64_t c : e) a.push_back(c);
    return a;
}

} // namespace

ordered_json ring_to_json(const FiniteLevelRing& ring) {
    ordered_json j;
    if (ring.kind() == FiniteLevelRing::Kind::GroupRing) {
        j["kind"] = "group_ring";
        j["l"] = ring.coeff().p();
        j["N"] = ring.coeff().precision();
        j["p"] = ring.group().p;
        j["exponents"] = ring.group().exponents;
    } else {
        j["kind"] = "trunc_poly";
        j["p"] = ring.coeff().p();
        j["N"] = ring.coeff().precision();
        j["d"] = ring.vars();
        j["M"] = ring.degree_cap();
    }
    return j;
}

FiniteLevelRing ring_from_json(const json& j, const std::string& path) {
    std::string kind = need_str(j, path, "kind");
    if (kind == "group_ring") {
        PrimePowerRing coeff(need_u64(j, path, "l"),
                             static_cast<unsigned>(need_u64(j, path, "N")));
        FiniteAbelianPGroup g(need_u64(j, path, "p"), need_unsigned_list(j, path, "exponents"));
        return FiniteLevelRing::group_ring(coeff, g);
    }
    if (kind == "trunc_poly") {
        PrimePowerRing coeff(need_u64(j, path, "p"),
                             static_cast<unsigned>(need_u64(j, path, "N")));
        return FiniteLevelRing::truncated_poly(coeff,
                                               static_cast<unsigned>(need_u64(j, path, "d")),
                                               static_cast<unsigned>(need_u64(j, path, "M")));
    }
    bad_field(path + ".kind", "expected \"group_ring\" or \"trunc_poly\"");
}

ordered_json group_structure_to_json(const AbelianGroupStructure& g) {
    ordered_json a = ordered_json::array();
    for (std::uint64_t d : g.invariant_factors) a.push_back(d);
    return a;
}

ordered_json place_to_json(const TateLocalData& t) {
    ordered_json j;
    j["ord_v_j"] = t.ord_v_j;
    j["residue_size"] = t.residue_size;
    j["reduction"] =
        t.reduction == ReductionType::Good ? "good" : "split_multiplicative";
    ordered_json b;
    switch (t.behavior.kind) {
        case PlaceBehaviorKind::SplitsCompletely: b["kind"] = "splits_completely"; break;
        case PlaceBehaviorKind::UnramifiedInert: b["kind"] = "unramified_inert"; break;
        case PlaceBehaviorKind::Ramified:
            b["kind"] = "ramified";
            b["d_v"] = t.behavior.d_v;
            b["e"] = t.behavior.e;
            break;
    }
    j["behavior"] = b;
    return j;
}

TateLocalData place_from_json(const json& j, const std::string& path) {
    TateLocalData t;
    t.ord_v_j = need_i64(j, path, "ord_v_j");
    t.residue_size = need_u64(j, path, "residue_size");
    std::string red = need_str(j, path, "reduction");
    if (red == "good")
        t.reduction = ReductionType::Good;
    else if (red == "split_multiplicative")
        t.reduction = ReductionType::SplitMultiplicative;
    else
        bad_field(path + ".reduction", "expected \"good\" or \"split_multiplicative\"");
    const json& b = need(j, path, "behavior");
    std::string kind = need_str(b, path + ".behavior", "kind");
    if (kind == "splits_completely") {
        t.behavior.kind = PlaceBehaviorKind::SplitsCompletely;
    } else if (kind == "unramified_inert") {
        t.behavior.kind = PlaceBehaviorKind::UnramifiedInert;
    } else if (kind == "ramified") {
        t.behavior.kind = PlaceBehaviorKind::Ramified;
        t.behavior.d_v = static_cast<unsigned>(need_u64(b, path + ".behavior", "d_v"));
        t.behavior.e = need_u64(b, path + ".behavior", "e");
    } else {
        bad_field(path + ".behavior.kind", "unknown place behavior");
    }
    return t;
}

namespace {

ordered_json classification_to_json(const KerDwClass& c) {
    ordered_json j;
    switch (c.kind) {
        case KerDwClass::Kind::Zero: j["kind"] = "zero"; break;
        case KerDwClass::Kind::FiniteBounded:
            j["kind"] = "finite_bounded";
            j["bound"] = c.bound;
            break;
        case KerDwClass::Kind::CorankAtMost:
            j["kind"] = "corank_at_most";
            j["corank"] = c.corank;
            break;
    }
    return j;
}

} // namespace

ordered_json control_report_to_json(const ControlReport& r) {
    ordered_json j;
    j["ker_a_bound"] = r.ker_a_bound;
    j["ker_b_bound"] = r.ker_b_bound;
    j["coker_b_bound"] = r.coker_b_bound;
    ordered_json places = ordered_json::array();
    for (const auto& pr : r.places) {
        ordered_json pj;
        pj["index"] = pr.index;
        if (pr.excised) {
            pj["excised"] = true;
        } else {
            pj["classification"] = classification_to_json(pr.classification);
        }
        if (pr.inert_unbounded_warning) pj["inert_unbounded_warning"] = true;
        places.push_back(pj);
    }
    j["places"] = places;
    j["total_corank_bound"] = r.total_corank_bound;
    j["verdict"] = verdict_name(r.verdict);
    if (r.is_sigma) j["dual_module_torsion"] = r.dual_module_torsion;
    return j;
}

// ---------------------------------------------------------------------------
// job running
// ---------------------------------------------------------------------------

namespace {

struct JobOutput {
    ordered_json payload;
    std::vector<std::string> warnings;
};

JobOutput run_cohomology(const json& p) {
    FiniteAbelianPGroup group(need_u64(need(p, "payload", "group"), "payload.group", "p"),
                              need_unsigned_list(need(p, "payload", "group"), "payload.group",
                                                 "exponents"));
    const json& mod = need(p, "payload", "module");
    std::uint64_t l = need_u64(mod, "payload.module", "l");
    std::vector<unsigned> exps = need_unsigned_list(mod, "payload.module", "exponents");
    std::sort(exps.begin(), exps.end());
    GModuleData gm;
    if (p.contains("actions")) {
        const json& acts = p["actions"];
        if (!acts.is_array() || acts.size() != group.rank())
            bad_field("payload.actions", "expected one matrix per group generator");
        unsigned N = exps.empty() ? 1 : exps.back();
        PrimePowerRing R(l, N);
        std::size_t n = exps.size();
        std::vector<PrimePowerMatrix> actions;
        for (std::size_t i = 0; i < acts.size(); ++i) {
            const json& a = acts[i];
            std::string path = "payload.actions[" + std::to_string(i) + "]";
            if (!a.is_array() || a.size() != n * n)
                bad_field(path, "expected a row-major array of " + std::to_string(n * n) +
                                    " integers");
            std::vector<std::uint64_t> entries(n * n);
            for (std::size_t t = 0; t < n * n; ++t) {
                if (!a[t].is_number_integer() && !a[t].is_number_unsigned())
                    bad_field(path + "[" + std::to_string(t) + "]", "expected an integer");
                entries[t] = R.reduce_signed(a[t].get<std::int64_t>());
            }
            actions.emplace_back(R, n, n, std::move(entries));
        }
        gm = make_g_module(group, l, exps, std::move(actions));
    } else {
        gm = trivial_g_module(group, l, exps);
    }
    bool profinite = opt_bool(p, "payload", "profinite", false);
    JobOutput out;
    if (profinite) {
        AbelianGroupStructure h1 = cohomology_profinite(gm, 1);
        AbelianGroupStructure h2 = cohomology_profinite(gm, 2);
        out.payload["h1"] = group_structure_to_json(h1);
        out.payload["h2"] = group_structure_to_json(h2);
        out.payload["h1_within_bound"] = h1_bound_holds(gm, h1);
        out.payload["h2_within_bound"] = h2_bound_holds(gm, h2);
    } else {
        AbelianGroupStructure h0 = cohomology_groups(gm, 0);
        AbelianGroupStructure h1 = cohomology_groups(gm, 1);
        AbelianGroupStructure h2 = cohomology_groups(gm, 2);
        out.payload["h0"] = group_structure_to_json(h0);
        out.payload["h1"] = group_structure_to_json(h1);
        out.payload["h2"] = group_structure_to_json(h2);
        out.payload["h1_within_bound"] = h1_bound_holds(gm, h1);
    }
    return out;
}

JobOutput run_fitting(const json& p) {
    FiniteLevelRing ring = ring_from_json(need(p, "payload", "ring"), "payload.ring");
    std::size_t a = need_u64(p, "payload", "relations");
    std::size_t b = need_u64(p, "payload", "generators");
    const json& m = need(p, "payload", "matrix");
    if (!m.is_array() || m.size() != a * b)
        bad_field("payload.matrix", "expected " + std::to_string(a * b) + " entries");
    std::vector<FiniteLevelRing::Element> entries;
    for (std::size_t i = 0; i < m.size(); ++i)
        entries.push_back(
            element_from_json(m[i], "payload.matrix[" + std::to_string(i) + "]", ring));
    ModulePresentation pres = make_presentation(ring, a, b, std::move(entries));
    RingIdeal fitt = fitting_ideal(pres);
    JobOutput out;
    ordered_json gens = ordered_json::array();
    for (const auto& g : fitt.generators) gens.push_back(element_to_json(g));
    out.payload["generators"] = gens;
    out.payload["span_cardinality"] = {{"base", ring.coeff().p()},
                                       {"exponent", fitt.size_exponent()}};
    out.payload["min_generators"] =
        (ring.kind() == FiniteLevelRing::Kind::TruncatedPoly ||
         ring.group().p == ring.coeff().p())
            ? ordered_json(min_generators(pres))
            : ordered_json(nullptr);
    return out;
}

JobOutput run_carlitz(const json& p) {
    std::uint64_t prime_p = need_u64(p, "payload", "p");
    unsigned f = static_cast<unsigned>(need_u64(p, "payload", "f"));
    FqContext F(prime_p, f);
    std::vector<unsigned> coeffs = need_unsigned_list(p, "payload", "prime");
    PolyFq prime;
    for (unsigned c : coeffs) {
        if (c >= F.q()) bad_field("payload.prime", "coefficient exceeds q - 1");
        prime.push_back(static_cast<std::uint16_t>(c));
    }
    prime = poly_trim(std::move(prime));
    unsigned n = static_cast<unsigned>(need_u64(p, "payload", "n"));
    TorsionLayer layer = torsion_layer(F, prime, n);
    JobOutput out;
    out.payload["q"] = F.q();
    out.payload["torsion_count"] = layer.torsion_count;
    out.payload["galois_order"] = layer.galois_order;
    out.payload["zp_part_order"] = layer.zp_part_order;
    out.payload["prime_to_p_order"] = layer.prime_to_p_order;
    long double size = 1;
    for (int i = 0; i < poly_deg(prime) * static_cast<int>(n); ++i)
        size *= static_cast<long double>(F.q());
    if (size <= 1e5) {
        AbelianGroupStructure units = unit_group_structure(F, prime, n);
        out.payload["unit_group"] = group_structure_to_json(units);
        out.payload["unit_group_p_part"] = group_structure_to_json(units.sylow(prime_p));
    }
    return out;
}

JobOutput run_tate(const json& p) {
    std::uint64_t tower_p = need_u64(p, "payload", "p");
    unsigned d = static_cast<unsigned>(need_u64(p, "payload", "d"));
    std::uint64_t l = need_u64(p, "payload", "l");
    const json& places = need(p, "payload", "places");
    if (!places.is_array()) bad_field("payload.places", "expected an array");
    JobOutput out;
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < places.size(); ++i) {
        std::string path = "payload.places[" + std::to_string(i) + "]";
        TateLocalData t = place_from_json(places[i], path);
        validate_place(t, tower_p, d);
        ordered_json row;
        row["index"] = i;
        if (t.reduction == ReductionType::SplitMultiplicative) {
            LocalInvariants inv = local_invariants(t);
            row["component_order"] = inv.component_order;
            row["tate_index"] = inv.tate_index;
            row["h1_e0"] = group_structure_to_json(inv.h1_e0);
        } else {
            row["component_order"] = nullptr;
            row["tate_index"] = nullptr;
            row["h1_e0"] = nullptr;
        }
        row["classification"] = classification_to_json(ker_dw_classify(t, l, tower_p, d));
        rows.push_back(row);
    }
    out.payload["places"] = rows;
    return out;
}

JobOutput run_control(const json& p) {
    ControlInput in;
    in.p = need_u64(p, "payload", "p");
    in.d = static_cast<unsigned>(need_u64(p, "payload", "d"));
    in.torsion_order = need_u64(p, "payload", "t");
    const json& places = need(p, "payload", "places");
    if (!places.is_array()) bad_field("payload.places", "expected an array");
    for (std::size_t i = 0; i < places.size(); ++i)
        in.places.push_back(
            place_from_json(places[i], "payload.places[" + std::to_string(i) + "]"));
    if (p.contains("sigma")) {
        const json& s = p["sigma"];
        if (!s.is_array()) bad_field("payload.sigma", "expected an array of place indices");
        std::vector<std::size_t> sigma;
        for (const auto& v : s) {
            if (!v.is_number_unsigned()) bad_field("payload.sigma", "expected indices");
            sigma.push_back(v.get<std::size_t>());
        }
        in.sigma = std::move(sigma);
    }
    in.base_selmer_cofinitely_generated =
        opt_bool(p, "payload", "base_selmer_cofinitely_generated", false);
    in.sigma_base_finite = opt_bool(p, "payload", "sigma_base_finite", false);
    if (p.contains("j_level")) {
        if (!p["j_level"].is_number_unsigned())
            bad_field("payload.j_level", "expected a nonnegative integer");
        in.j_level = p["j_level"].get<unsigned>();
    }
    ControlReport rep = in.sigma ? sigma_report(in) : control_report(in);
    JobOutput out;
    out.payload = control_report_to_json(rep);
    out.warnings = rep.warnings;
    return out;
}

JobOutput run_intersect(const json& p) {
    FiniteLevelRing ring = ring_from_json(need(p, "payload", "ring"), "payload.ring");
    const json& ideals = need(p, "payload", "ideals");
    if (!ideals.is_array() || ideals.empty())
        bad_field("payload.ideals", "expected a nonempty array of generator lists");
    std::vector<RingIdeal> list;
    for (std::size_t i = 0; i < ideals.size(); ++i) {
        std::string path = "payload.ideals[" + std::to_string(i) + "]";
        if (!ideals[i].is_array()) bad_field(path, "expected a generator list");
        std::vector<FiniteLevelRing::Element> gens;
        for (std::size_t g = 0; g < ideals[i].size(); ++g)
            gens.push_back(
                element_from_json(ideals[i][g], path + "[" + std::to_string(g) + "]", ring));
        list.push_back(ideal_span(ring, std::move(gens)));
    }
    RingIdeal res = pro_fitting_intersection(list);
    JobOutput out;
    ordered_json gens = ordered_json::array();
    for (const auto& g : res.generators) gens.push_back(element_to_json(g));
    out.payload["generators"] = gens;
    out.payload["span_cardinality"] = {{"base", ring.coeff().p()},
                                       {"exponent", res.size_exponent()}};
    return out;
}

// Plain aligned text rendering; scalar fields as "key: value" lines, arrays
// of objects as one line per entry.
void render_table(const ordered_json& j, std::ostream& os, const std::string& prefix) {
    for (const auto& [key, value] : j.items()) {
        if (value.is_array() && !value.empty() && value.front().is_object()) {
            os << prefix << key << ":\n";
            for (const auto& row : value) {
                os << prefix << "  -";
                for (const auto& [k2, v2] : row.items()) os << " " << k2 << "=" << v2.dump();
                os << "\n";
            }
        } else if (value.is_object()) {
            os << prefix << key << ":\n";
            render_table(value, os, prefix + "  ");
        } else {
            os << prefix << key << ": " << value.dump() << "\n";
        }
    }
}

} // namespace

JobResult run_job_text(const std::string& job_text,
                       const std::optional<std::string>& format_override) {
    JobResult res;
    try {
        json job = json::parse(job_text);
        std::string command = need_str(job, "job", "command");
        std::string format = format_override.value_or(
            job.contains("output") ? need_str(job, "job", "output") : std::string("json"));
        if (format != "json" && format != "table")
            bad_field("job.output", "expected \"json\" or \"table\"");
        const json& payload = need(job, "job", "payload");

        JobOutput out;
        if (command == "cohomology")
            out = run_cohomology(payload);
        else if (command == "fitting")
            out = run_fitting(payload);
        else if (command == "carlitz")
            out = run_carlitz(payload);
        else if (command == "tate")
            out = run_tate(payload);
        else if (command == "control-report")
            out = run_control(payload);
        else if (command == "intersect")
            out = run_intersect(payload);
        else
            bad_field("job.command", "unknown command \"" + command + "\"");

        res.warnings = out.warnings;
        if (format == "json") {
            res.output = out.payload.dump(2) + "\n";
        } else {
            std::ostringstream os;
            render_table(out.payload, os, "");
            res.output = os.str();
        }
        return res;
    } catch (const hypothesis_error& e) {
        res.exit_code = 3;
        res.error = e.what();
        return res;
    } catch (const validation_error& e) {
        res.exit_code = 2;
        res.error = e.what();
        return res;
    } catch (const json::exception& e) {
        res.exit_code = 2;
        res.error = std::string("job file: ") + e.what();
        return res;
    }
}

JobResult run_job_file(const std::string& path,
                       const std::optional<std::string>& format_override) {
    std::ifstream in(path);
    if (!in) {
        JobResult res;
        res.exit_code = 2;
        res.error = "cannot read job file: " + path;
        return res;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return run_job_text(buf.str(), format_override);
}

} // namespace iwa
