#ifndef IWA_SERIALIZE_HPP
#define IWA_SERIALIZE_HPP

// JSON wire formats for rings, modules, places and reports, plus the job
// runner behind the CLI: a job file comes in, a deterministic report goes
// out.

#include <optional>
#include <string>

#include <json.hpp>

#include "iwa/cohomology.hpp"
#include "iwa/control_report.hpp"
#include "iwa/module_theory.hpp"

namespace iwa {

using ordered_json = nlohmann::ordered_json;

// {"kind":"group_ring","l":..,"N":..,"p":..,"exponents":[..]} or
// {"kind":"trunc_poly","p":..,"N":..,"d":..,"M":..}
ordered_json ring_to_json(const FiniteLevelRing& ring);
FiniteLevelRing ring_from_json(const nlohmann::json& j, const std::string& path);

ordered_json group_structure_to_json(const AbelianGroupStructure& g);

ordered_json place_to_json(const TateLocalData& t);
TateLocalData place_from_json(const nlohmann::json& j, const std::string& path);

ordered_json control_report_to_json(const ControlReport& r);

struct JobResult {
    int exit_code = 0;          // 0 ok, 2 validation error, 3 hypothesis violation
    std::string output;         // report payload (stdout)
    std::string error;          // diagnostic (stderr)
    std::vector<std::string> warnings; // diagnostics (stderr)
};

// Format is "json" or "table"; the override wins over the job file's
// "output" field.
JobResult run_job_text(const std::string& job_text,
                       const std::optional<std::string>& format_override = std::nullopt);
JobResult run_job_file(const std::string& path,
                       const std::optional<std::string>& format_override = std::nullopt);

} // namespace iwa

#endif
