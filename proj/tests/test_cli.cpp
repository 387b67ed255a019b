#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "iwa/serialize.hpp"

using namespace iwa;
using nlohmann::json;

TEST_CASE("carlitz job: table output carries the layer numbers") {
    std::string job = R"({
        "command": "carlitz",
        "output": "table",
        "payload": {"p": 2, "f": 1, "prime": [0, 1], "n": 2}
    })";
    JobResult res = run_job_text(job);
    REQUIRE(res.exit_code == 0);
    CHECK(res.output.find("galois_order: 2") != std::string::npos);
    CHECK(res.output.find("torsion_count: 4") != std::string::npos);
    // json output parses and round-trips the schema
    JobResult js = run_job_text(job, std::string("json"));
    REQUIRE(js.exit_code == 0);
    json parsed = json::parse(js.output);
    CHECK(parsed["galois_order"] == 2);
    CHECK(parsed["unit_group"] == json::array({2}));
}

TEST_CASE("malformed jobs exit 2 with a field path") {
    JobResult res = run_job_text(R"({"command": "carlitz", "payload": {"p": 2, "f": 1}})");
    CHECK(res.exit_code == 2);
    CHECK(res.error.find("payload.prime") != std::string::npos);

    JobResult bad_cmd = run_job_text(R"({"command": "nope", "payload": {}})");
    CHECK(bad_cmd.exit_code == 2);
    CHECK(bad_cmd.error.find("job.command") != std::string::npos);

    JobResult not_json = run_job_text("{");
    CHECK(not_json.exit_code == 2);

    // reducible prime: domain validation, still exit 2
    JobResult red = run_job_text(
        R"({"command": "carlitz", "payload": {"p": 2, "f": 1, "prime": [0, 0, 1], "n": 1}})");
    CHECK(red.exit_code == 2);
}

TEST_CASE("hypothesis violations exit 3") {
    std::string job = R"({
        "command": "control-report",
        "payload": {
            "p": 2, "d": 1, "t": 2,
            "places": [{
                "ord_v_j": 0, "residue_size": 4, "reduction": "good",
                "behavior": {"kind": "ramified", "d_v": 1, "e": 2}
            }]
        }
    })";
    JobResult res = run_job_text(job);
    CHECK(res.exit_code == 3);
}

TEST_CASE("control-report json payload has exactly the contract keys") {
    std::string job = R"({
        "command": "control-report",
        "payload": {
            "p": 2, "d": 1, "t": 2,
            "places": [{
                "ord_v_j": -3, "residue_size": 4,
                "reduction": "split_multiplicative",
                "behavior": {"kind": "ramified", "d_v": 1, "e": 2}
            }]
        }
    })";
    JobResult res = run_job_text(job);
    REQUIRE(res.exit_code == 0);
    json parsed = json::parse(res.output);
    std::vector<std::string> keys;
    for (auto it = parsed.begin(); it != parsed.end(); ++it) keys.push_back(it.key());
    std::sort(keys.begin(), keys.end());
    CHECK(keys == std::vector<std::string>{"coker_b_bound", "ker_a_bound", "ker_b_bound",
                                           "places", "total_corank_bound", "verdict"});
    CHECK(parsed["ker_a_bound"] == 2);
    CHECK(parsed["coker_b_bound"] == 1);
    CHECK(parsed["total_corank_bound"] == 1);
}

TEST_CASE("determinism: identical runs produce identical bytes") {
    for (const char* job :
         {R"({"command": "carlitz", "payload": {"p": 3, "f": 1, "prime": [0, 1], "n": 2}})",
          R"({"command": "cohomology", "payload": {
                "group": {"p": 2, "exponents": [1, 1]},
                "module": {"l": 2, "exponents": [1]}}})",
          R"({"command": "intersect", "payload": {
                "ring": {"kind": "trunc_poly", "p": 2, "N": 2, "d": 2, "M": 3},
                "ideals": [[[2,0,0,0,0,0,0,0,0], [0,1,0,0,0,0,0,0,0]],
                           [[2,0,0,0,0,0,0,0,0], [0,0,0,1,0,0,0,0,0]]]}})"}) {
        JobResult a = run_job_text(job);
        JobResult b = run_job_text(job);
        REQUIRE(a.exit_code == 0);
        CHECK(a.output == b.output);
        JobResult ta = run_job_text(job, std::string("table"));
        JobResult tb = run_job_text(job, std::string("table"));
        CHECK(ta.output == tb.output);
    }
}

TEST_CASE("cohomology job reports invariant factors and the bound verdict") {
    std::string job = R"({
        "command": "cohomology",
        "payload": {
            "group": {"p": 3, "exponents": [1, 1]},
            "module": {"l": 3, "exponents": [1]}
        }
    })";
    JobResult res = run_job_text(job);
    REQUIRE(res.exit_code == 0);
    json parsed = json::parse(res.output);
    CHECK(parsed["h0"] == json::array({3}));
    CHECK(parsed["h1"] == json::array({3, 3})); // Hom((Z/3)^2, Z/3)
    CHECK(parsed["h1_within_bound"] == true);

    std::string prof = R"({
        "command": "cohomology",
        "payload": {
            "group": {"p": 3, "exponents": [1]},
            "module": {"l": 3, "exponents": [2]},
            "actions": [[4]],
            "profinite": true
        }
    })";
    JobResult pres = run_job_text(prof);
    REQUIRE(pres.exit_code == 0);
    json pparsed = json::parse(pres.output);
    CHECK(pparsed["h1"] == json::array({3})); // coinvariants of 1+p on Z/9
    CHECK(pparsed["h2"] == json::array());
    CHECK(pparsed["h2_within_bound"] == true);
}

TEST_CASE("fitting job round-trips the ring descriptor and emits the span size") {
    std::string job = R"({
        "command": "fitting",
        "payload": {
            "ring": {"kind": "trunc_poly", "p": 2, "N": 3, "d": 1, "M": 4},
            "relations": 2, "generators": 2,
            "matrix": [[2,0,0,0], [0,0,0,0], [0,0,0,0], [0,1,0,0]]
        }
    })";
    JobResult res = run_job_text(job);
    REQUIRE(res.exit_code == 0);
    json parsed = json::parse(res.output);
    // Fitt = (pT): one generator, 2T on the T coordinate
    REQUIRE(parsed["generators"].size() == 1);
    CHECK(parsed["generators"][0] == json::array({0, 2, 0, 0}));
    CHECK(parsed["span_cardinality"]["base"] == 2);
    CHECK(parsed["min_generators"] == 2);

    // group-ring descriptor parses with the documented keys
    std::string gr = R"({
        "command": "fitting",
        "payload": {
            "ring": {"kind": "group_ring", "l": 3, "N": 2, "p": 3, "exponents": [1]},
            "relations": 1, "generators": 1,
            "matrix": [[3, 0, 0]]
        }
    })";
    CHECK(run_job_text(gr).exit_code == 0);
}

TEST_CASE("tate job emits one row per place") {
    std::string job = R"({
        "command": "tate",
        "payload": {
            "p": 2, "d": 1, "l": 2,
            "places": [
                {"ord_v_j": -5, "residue_size": 4, "reduction": "split_multiplicative",
                 "behavior": {"kind": "splits_completely"}},
                {"ord_v_j": 0, "residue_size": 8, "reduction": "good",
                 "behavior": {"kind": "unramified_inert"}}
            ]
        }
    })";
    JobResult res = run_job_text(job);
    REQUIRE(res.exit_code == 0);
    json parsed = json::parse(res.output);
    REQUIRE(parsed["places"].size() == 2);
    CHECK(parsed["places"][0]["component_order"] == 5);
    CHECK(parsed["places"][0]["tate_index"] == 15);
    CHECK(parsed["places"][1]["component_order"].is_null());
    CHECK(parsed["places"][1]["classification"]["kind"] == "zero");

    // empty place list: still valid, empty table
    std::string empty = R"({"command": "tate",
                            "payload": {"p": 2, "d": 1, "l": 2, "places": []}})";
    json eparsed = json::parse(run_job_text(empty).output);
    CHECK(eparsed["places"] == json::array());
}

TEST_CASE("sigma control job adds the torsion flag key") {
    std::string job = R"({
        "command": "control-report",
        "payload": {
            "p": 2, "d": 1, "t": 2, "sigma": [0], "sigma_base_finite": true,
            "places": [{
                "ord_v_j": -3, "residue_size": 4,
                "reduction": "split_multiplicative",
                "behavior": {"kind": "ramified", "d_v": 1, "e": 2}
            }]
        }
    })";
    JobResult res = run_job_text(job);
    REQUIRE(res.exit_code == 0);
    json parsed = json::parse(res.output);
    CHECK(parsed["verdict"] == "finite_kernels_cokernels");
    CHECK(parsed["dual_module_torsion"] == true);
    CHECK(parsed["places"][0]["excised"] == true);
}
