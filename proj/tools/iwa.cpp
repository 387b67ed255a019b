// Command-line front end: `iwa run <jobfile> [--format json|table]`.
// Exit codes: 0 success, 2 validation error, 3 mathematical-hypothesis
// violation.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "iwa/serialize.hpp"

int main(int argc, char** argv) {
    CLI::App app{"desk-scale Iwasawa-theory algebra for elliptic curves over function fields"};
    app.require_subcommand(1);

    std::string job_path;
    std::string format;
    CLI::App* run = app.add_subcommand("run", "run a job file and print the report");
    run->add_option("jobfile", job_path, "path to the JSON job file")->required();
    run->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "table"}));

    CLI11_PARSE(app, argc, argv);

    std::optional<std::string> override;
    if (!format.empty()) override = format;
    iwa::JobResult res = iwa::run_job_file(job_path, override);
    for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
    if (res.exit_code != 0) {
        std::cerr << "error: " << res.error << "\n";
        return res.exit_code;
    }
    std::cout << res.output;
    return 0;
}
