// Compares the serial reference kernels against their OpenMP versions on a
// seeded workload and reports wall times plus a result cross-check.

#include "tpmc/builtin_examples.hpp"
#include "tpmc/enumeration.hpp"
#include "tpmc/generate.hpp"
#include "tpmc/polytope.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

int max_jobs() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace

int main(int argc, char** argv) {
    int markets = argc > 1 ? std::atoi(argv[1]) : 14;
    const int jobs = argc > 2 ? std::atoi(argv[2]) : max_jobs();

    tpmc::RandomInstanceOptions options;
    options.seed = 20240;
    options.suppliers = 10;
    options.markets = markets;
    options.supply_cap = 2;
    options.demand_cap = 2;
    options.density = tpmc::Rational(2, 5);
    options.cost_max = 9;
    const auto inst = tpmc::random_instance(options);

    std::cout << "selection table over " << (1u << markets) << " selections ("
              << inst.num_supplies() << " supplies, " << inst.num_edges() << " edges)\n";
    const auto t_serial = Clock::now();
    const auto serial = tpmc::build_selection_table_serial(inst);
    const double serial_s = seconds_since(t_serial);
    const auto t_parallel = Clock::now();
    const auto parallel = tpmc::build_selection_table(inst, jobs);
    const double parallel_s = seconds_since(t_parallel);
    bool same = serial.size() == parallel.size();
    for (std::size_t i = 0; same && i < serial.size(); ++i) {
        same = serial[i].feasible == parallel[i].feasible &&
               serial[i].transport_cost == parallel[i].transport_cost;
    }
    std::cout << "  serial   " << serial_s << " s\n"
              << "  parallel " << parallel_s << " s  (" << jobs << " jobs, speedup "
              << (parallel_s > 0 ? serial_s / parallel_s : 0) << ")\n"
              << "  results  " << (same ? "identical" : "MISMATCH") << "\n";

    const auto ex = tpmc::example2();
    std::cout << "objective battery on the bundled demand-3 instance\n";
    tpmc::AuditOptions audit;
    audit.random_objectives = 2048;
    const auto t_audit_serial = Clock::now();
    const auto verdict_serial = tpmc::audit_theorem1(ex.instance, 4, audit);
    const double audit_serial_s = seconds_since(t_audit_serial);
    audit.jobs = jobs;
    const auto t_audit_parallel = Clock::now();
    const auto verdict_parallel = tpmc::audit_theorem1(ex.instance, 4, audit);
    const double audit_parallel_s = seconds_since(t_audit_parallel);
    std::cout << "  serial   " << audit_serial_s << " s\n"
              << "  parallel " << audit_parallel_s << " s  (speedup "
              << (audit_parallel_s > 0 ? audit_serial_s / audit_parallel_s : 0) << ")\n"
              << "  verdicts " << (verdict_serial.holds == verdict_parallel.holds
                                       ? "identical"
                                       : "MISMATCH")
              << "\n";
    return same && verdict_serial.holds == verdict_parallel.holds ? 0 : 1;
}
