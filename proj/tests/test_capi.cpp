#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstring>
#include <string>
#include <thread>
#include <vector>

#include "acdc/acdc.h"
#include "test_util.hpp"

using acdc::test::data_path;

namespace {

struct Handles {
    acdc_case* net = nullptr;
    acdc_mtdc* mtdc = nullptr;
    acdc_solution* sol = nullptr;
    ~Handles() {
        acdc_solution_free(sol);
        acdc_mtdc_free(mtdc);
        acdc_case_free(net);
    }
};

}  // namespace

TEST_CASE("load, introspect and free a case") {
    Handles h;
    REQUIRE(acdc_case_load(data_path("ieee14.m").c_str(), &h.net) == ACDC_OK);
    CHECK(acdc_case_bus_count(h.net) == 14);
    CHECK(acdc_case_gen_count(h.net) == 5);
    CHECK(acdc_case_branch_count(h.net) == 20);
    CHECK(acdc_case_base_mva(h.net) == 100.0);
}

TEST_CASE("missing file reports ACDC_ERROR_IO with a message") {
    acdc_case* net = nullptr;
    CHECK(acdc_case_load("/nonexistent/missing.m", &net) == ACDC_ERROR_IO);
    CHECK(net == nullptr);
    CHECK(std::string(acdc_last_error()).find("file not found") != std::string::npos);
}

TEST_CASE("malformed case reports ACDC_ERROR_PARSE") {
    acdc_case* net = nullptr;
    CHECK(acdc_case_parse("mpc.bus = [", &net) == ACDC_ERROR_PARSE);
    CHECK(net == nullptr);
}

TEST_CASE("null arguments are rejected") {
    CHECK(acdc_case_load(nullptr, nullptr) == ACDC_ERROR_ARGUMENT);
    acdc_options opts;
    acdc_options_init(&opts);
    CHECK(opts.tol == 1e-8);
    CHECK(opts.max_iter == 50);
    CHECK(opts.enforce_start_iter == 4);
    CHECK(opts.max_pv_per_iter == 1);
    CHECK(opts.qlim_enforcement == 1);
}

TEST_CASE("validate emits a JSON report") {
    Handles h;
    REQUIRE(acdc_case_load(data_path("ieee14.m").c_str(), &h.net) == ACDC_OK);
    REQUIRE(acdc_mtdc_load(data_path("vsc4_ring.json").c_str(), &h.mtdc) == ACDC_OK);
    char* report = nullptr;
    CHECK(acdc_validate(h.net, h.mtdc, &report) == ACDC_OK);
    REQUIRE(report != nullptr);
    const auto j = nlohmann::json::parse(report);
    CHECK(j.at("errors").empty());
    acdc_string_free(report);
}

TEST_CASE("validation failure surfaces through the status code") {
    Handles h;
    REQUIRE(acdc_case_load(data_path("ieee14.m").c_str(), &h.net) == ACDC_OK);
    const char* overlay = R"({
      "converters": [
        {"id":1,"ac_bus":99,"dc_node":1,"role":"primary","control_mode":"PQ",
         "p_set":0.1,"q_set":0.0,"rsh":0.002,"xsh":0.1,
         "vsh_min":0.9,"vsh_max":1.1,"ish_max":1.0},
        {"id":2,"ac_bus":14,"dc_node":2,"role":"secondary",
         "v_set":1.03,"vdc_set":1.0,"rsh":0.002,"xsh":0.1,
         "vsh_min":0.9,"vsh_max":1.1,"ish_max":1.0}
      ],
      "dc_nodes": [{"id":1},{"id":2}],
      "dc_lines": [{"from":1,"to":2,"r":1.0}]
    })";
    REQUIRE(acdc_mtdc_parse(overlay, &h.mtdc) == ACDC_OK);
    char* report = nullptr;
    CHECK(acdc_validate(h.net, h.mtdc, &report) == ACDC_ERROR_VALIDATION);
    const auto j = nlohmann::json::parse(report);
    CHECK_FALSE(j.at("errors").empty());
    acdc_string_free(report);

    acdc_solution* sol = nullptr;
    CHECK(acdc_solve(h.net, h.mtdc, nullptr, &sol) == ACDC_ERROR_VALIDATION);
    CHECK(sol == nullptr);
}

TEST_CASE("solve the overlay case through the C API") {
    Handles h;
    REQUIRE(acdc_case_load(data_path("ieee14_qlim.m").c_str(), &h.net) == ACDC_OK);
    REQUIRE(acdc_mtdc_load(data_path("vsc4_ring.json").c_str(), &h.mtdc) == ACDC_OK);
    REQUIRE(acdc_solve(h.net, h.mtdc, nullptr, &h.sol) == ACDC_OK);

    CHECK(acdc_solution_status(h.sol) == ACDC_SOLVE_CONVERGED);
    CHECK(acdc_solution_iterations(h.sol) > 0);
    CHECK(acdc_solution_residual_norm(h.sol) <= 1e-8);
    CHECK(acdc_solution_symbolic_analyses(h.sol) == 1);
    CHECK(acdc_solution_pattern_stable(h.sol) == 1);
    CHECK(acdc_solution_bus_count(h.sol) == 14);
    CHECK(acdc_solution_vsc_count(h.sol) == 4);
    CHECK(acdc_solution_dc_node_count(h.sol) == 4);

    acdc_bus_result b2;
    REQUIRE(acdc_solution_bus(h.sol, 1, &b2) == ACDC_OK);
    CHECK(b2.id == 2);
    CHECK(b2.v > 0.9);

    acdc_vsc_result v1;
    REQUIRE(acdc_solution_vsc(h.sol, 0, &v1) == ACDC_OK);
    CHECK(v1.id == 1);
    CHECK(v1.vsh_binding == 1);
    CHECK(v1.p_sh == doctest::Approx(0.2).epsilon(1e-7));
    acdc_vsc_result v2;
    REQUIRE(acdc_solution_vsc(h.sol, 1, &v2) == ACDC_OK);
    CHECK(v2.vsh_binding == -1);

    // Binding list covers the two converter pins (plus any generator pins).
    int vsh_pins = 0;
    for (int i = 0; i < acdc_solution_binding_count(h.sol); ++i) {
        acdc_binding_limit bl;
        REQUIRE(acdc_solution_binding(h.sol, i, &bl) == ACDC_OK);
        if (std::strcmp(bl.device, "vsc") == 0) ++vsh_pins;
    }
    CHECK(vsh_pins == 2);

    // Iteration log with event strings.
    REQUIRE(acdc_solution_iteration_count(h.sol) == acdc_solution_iterations(h.sol));
    bool saw_event = false;
    for (int i = 0; i < acdc_solution_iteration_count(h.sol); ++i) {
        acdc_iteration_entry e;
        REQUIRE(acdc_solution_iteration(h.sol, i, &e) == ACDC_OK);
        CHECK(e.residual_norm >= 0.0);
        for (int j = 0; j < e.event_count; ++j) {
            const char* ev = acdc_solution_iteration_event(h.sol, i, j);
            REQUIRE(ev != nullptr);
            saw_event = true;
        }
    }
    CHECK(saw_event);
    CHECK(acdc_solution_iteration_event(h.sol, 0, 99) == nullptr);

    char* json = acdc_solution_to_json(h.sol);
    REQUIRE(json != nullptr);
    const auto j = nlohmann::json::parse(json);
    CHECK(j.at("status") == "converged");
    CHECK(j.at("buses").size() == 14);
    acdc_string_free(json);
}

TEST_CASE("out-of-range indices are rejected") {
    Handles h;
    REQUIRE(acdc_case_load(data_path("ieee14.m").c_str(), &h.net) == ACDC_OK);
    REQUIRE(acdc_solve(h.net, nullptr, nullptr, &h.sol) == ACDC_OK);
    acdc_bus_result b;
    CHECK(acdc_solution_bus(h.sol, -1, &b) == ACDC_ERROR_ARGUMENT);
    CHECK(acdc_solution_bus(h.sol, 14, &b) == ACDC_ERROR_ARGUMENT);
    acdc_vsc_result v;
    CHECK(acdc_solution_vsc(h.sol, 0, &v) == ACDC_ERROR_ARGUMENT);
}

TEST_CASE("independent solves run concurrently") {
    Handles h;
    REQUIRE(acdc_case_load(data_path("ieee14_qlim.m").c_str(), &h.net) == ACDC_OK);
    REQUIRE(acdc_mtdc_load(data_path("vsc4_ring.json").c_str(), &h.mtdc) == ACDC_OK);

    constexpr int kThreads = 4;
    std::vector<std::thread> workers;
    std::vector<int> iterations(kThreads, -1);
    for (int t = 0; t < kThreads; ++t) {
        workers.emplace_back([&, t] {
            acdc_solution* sol = nullptr;
            if (acdc_solve(h.net, h.mtdc, nullptr, &sol) != ACDC_OK) return;
            if (acdc_solution_status(sol) == ACDC_SOLVE_CONVERGED)
                iterations[t] = acdc_solution_iterations(sol);
            acdc_solution_free(sol);
        });
    }
    for (auto& w : workers) w.join();
    for (int t = 1; t < kThreads; ++t) {
        CHECK(iterations[t] > 0);
        CHECK(iterations[t] == iterations[0]);
    }
}

TEST_CASE("reserved option is refused cleanly") {
    Handles h;
    REQUIRE(acdc_case_load(data_path("ieee14.m").c_str(), &h.net) == ACDC_OK);
    acdc_options opts;
    acdc_options_init(&opts);
    opts.dishonest_newton = 1;
    acdc_solution* sol = nullptr;
    CHECK(acdc_solve(h.net, nullptr, &opts, &sol) == ACDC_ERROR_VALIDATION);
    CHECK(std::string(acdc_last_error()).find("reserved") != std::string::npos);
}
