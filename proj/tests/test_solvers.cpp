#include <doctest.h>

#include <cmath>

#include "batchcover/core.hpp"
#include "batchcover/generators.hpp"
#include "batchcover/solvers.hpp"
#include "test_util.hpp"

using namespace batchcover;

TEST_CASE("x_value: fixed points") {
    CHECK(x_value(1.0, 3, 0.0) == 0.0);
    CHECK(x_value(1.0, 3, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(x_value(1.0, 1, 0.5) == doctest::Approx(0.41421356237309503).epsilon(1e-14));
    CHECK_THROWS_AS(x_value(0.0, 3, 1.0), InvalidArguments);
    CHECK_THROWS_AS(x_value(1.0, 0, 1.0), InvalidArguments);
    CHECK_THROWS_AS(x_value(1.0, 1, -0.1), InvalidArguments);
}

TEST_CASE("x_value: strictly increasing and convex in the dual mass") {
    for (int d : {1, 5, 30}) {
        for (double c : {0.5, 1.0, 2.0}) {
            double prev = x_value(c, d, 0.0);
            double prev_step = 0.0;
            for (int i = 1; i <= 40; ++i) {
                const double cur = x_value(c, d, 0.05 * i);
                const double step = cur - prev;
                CHECK(step > 0.0);
                CHECK(step >= prev_step);
                prev = cur;
                prev_step = step;
            }
            // x reaches exactly 1 when the dual mass reaches the cost
            CHECK(x_value(c, d, c) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("run_trivial: single-set instance forces x to one") {
    const RunResult r = run_trivial(gen_online_worst(1));
    CHECK(r.primal_cost >= 1.0);
    CHECK(r.primal_cost <= 1.01);
    CHECK(r.opt_cost == 1.0);
    CHECK(r.d == 1);
    REQUIRE(r.per_batch_trace.size() == 1);
    CHECK(r.per_batch_trace[0] == TracePoint{1, r.primal_cost});
}

TEST_CASE("run_trivial: online worst case tracks the harmonic bound") {
    const RunResult r = run_trivial(gen_online_worst(10));
    CHECK(r.ratio == doctest::Approx(harmonic(10)).epsilon(0.03));
    CHECK(r.ratio >= harmonic(10));  // discretization only overshoots
}

TEST_CASE("closed-form identity holds at every checkpoint") {
    RunOptions opts;
    int checkpoints = 0;
    opts.checkpoint = [&](int, const FractionalState& state) {
        ++checkpoints;
        for (std::size_t j = 0; j < state.x.size(); ++j) {
            CHECK(state.x[j] == x_value(1.0, state.d, state.set_dual_mass(static_cast<int>(j))));
        }
    };
    run_dedicated(gen_batched_worst(9, 2), opts);
    CHECK(checkpoints == 6);
}

TEST_CASE("primal vector is non-decreasing across batches") {
    RunOptions opts;
    std::vector<double> last;
    opts.checkpoint = [&](int, const FractionalState& state) {
        if (!last.empty()) {
            for (std::size_t j = 0; j < state.x.size(); ++j) CHECK(state.x[j] >= last[j]);
        }
        last = state.x;
    };
    run_trivial(gen_batched_worst(12, 2), opts);
}

TEST_CASE("dedicated degenerates to trivial on singleton batches") {
    // identical arithmetic, so bit-identical output
    for (int m : {1, 4, 9}) {
        const Instance inst = gen_online_worst(m);
        const RunResult t = run_trivial(inst);
        const RunResult d = run_dedicated(inst);
        CHECK(t.primal_cost == d.primal_cost);
        CHECK(t.dual_value == d.dual_value);
    }
    testutil::Rng rng(42u);
    for (int round = 0; round < 20; ++round) {
        const Instance inst = testutil::random_instance(rng, 6, 5, 1);
        CHECK(run_trivial(inst).primal_cost == run_dedicated(inst).primal_cost);
    }
}

TEST_CASE("dedicated beats trivial on the batched worst case, more so at higher z") {
    const RunResult t2 = run_trivial(gen_batched_worst(20, 2));
    const RunResult d2 = run_dedicated(gen_batched_worst(20, 2));
    CHECK(d2.ratio <= t2.ratio);
    CHECK(t2.ratio > harmonic(17));  // strictly above the bound once z > 1

    const RunResult t4 = run_trivial(gen_batched_worst(20, 4));
    const RunResult d4 = run_dedicated(gen_batched_worst(20, 4));
    CHECK(d4.ratio <= t4.ratio);
    CHECK(t4.ratio - d4.ratio > t2.ratio - d2.ratio);
}

TEST_CASE("trivial: position order is the worst sequencing") {
    // the generator emits the closing element last, which is what makes the
    // batch worst-case; shuffles can only help the algorithm
    const Instance inst = gen_batched_worst(12, 2);
    const RunResult in_order = run_trivial(inst);
    RunOptions shuffled;
    shuffled.shuffle_seed = 7u;
    const RunResult out_of_order = run_trivial(inst, shuffled);
    CHECK(out_of_order.ratio <= in_order.ratio + 0.02);
    const RunResult again = run_trivial(inst, shuffled);
    CHECK(again.primal_cost == out_of_order.primal_cost);  // same seed, same order
}

TEST_CASE("run options: d policies") {
    const Instance inst = gen_batched_worst(10, 1);
    RunOptions opts;
    opts.d_policy = DPolicy::max_row_sparsity();
    CHECK(run_trivial(inst, opts).d == 9);  // widest membership list
    opts.d_policy = DPolicy::fixed_value(3);
    CHECK(run_trivial(inst, opts).d == 3);
    opts.d_policy = DPolicy::num_sets();
    CHECK(run_trivial(inst, opts).d == 10);
    opts.d_policy = DPolicy::fixed_value(0);
    CHECK_THROWS_AS(run_trivial(inst, opts), InvalidArguments);
}

TEST_CASE("run rejects infeasible and malformed instances") {
    Instance inst;
    inst.system = SetSystem::unweighted(2);
    Batch b;
    b.elements.push_back({1, 0, {}});
    inst.batches.push_back(b);
    CHECK_THROWS_AS(run_trivial(inst), Infeasible);

    Instance empty;
    empty.system = SetSystem::unweighted(2);
    CHECK_THROWS_AS(run_trivial(empty), InvalidArguments);
}

TEST_CASE("both algorithms: primal feasibility and dual near-feasibility") {
    testutil::Rng rng(0xFEEDull);
    for (int round = 0; round < 60; ++round) {
        const Instance inst = testutil::random_instance(rng, 8, 4, 4, round % 3 == 0);
        std::size_t max_batch = 0;
        for (const Batch& b : inst.batches) max_batch = std::max(max_batch, b.elements.size());
        for (Algorithm algorithm : {Algorithm::Trivial, Algorithm::Dedicated}) {
            RunOptions opts;
            FractionalState final_state;
            opts.checkpoint = [&](int, const FractionalState& s) { final_state = s; };
            run_algorithm(algorithm, inst, opts);

            for (const RevealedElement& e : final_state.revealed) {
                CHECK(final_state.coverage(e.member_of) >= 1.0);
            }
            for (int j = 0; j < inst.system.num_sets; ++j) {
                CHECK(final_state.set_dual_mass(j) <=
                      inst.system.costs[static_cast<std::size_t>(j)] +
                          final_state.epsilon * static_cast<double>(max_batch) + 1e-12);
            }
        }
    }
}

TEST_CASE("offline_opt: the batched family always has optimum one") {
    for (int z : {0, 1, 3}) {
        for (int m : {1 << z, (1 << z) + 4, 21}) {
            if (m < (1 << z)) continue;
            const OptResult opt = offline_opt(gen_batched_worst(m, z));
            CHECK(opt.cost == 1.0);
            CHECK(opt.chosen_sets.size() == 1);
            CHECK(opt.exact);
        }
    }
}

TEST_CASE("offline_opt: disjoint constraints force two sets") {
    Instance inst;
    inst.system = SetSystem::unweighted(4);
    Batch b;
    b.elements.push_back({1, 0, {0, 1}});
    b.elements.push_back({1, 1, {2, 3}});
    inst.batches.push_back(b);
    CHECK(offline_opt(inst).cost == 2.0);
}

TEST_CASE("offline_opt: matches exhaustive enumeration on random instances") {
    testutil::Rng rng(31337u);
    for (int round = 0; round < 120; ++round) {
        const Instance inst = testutil::random_instance(rng, 8, 4, 4, round % 2 == 0);
        const OptResult opt = offline_opt(inst);
        CHECK(opt.cost == doctest::Approx(testutil::brute_force_opt(inst)).epsilon(1e-12));
        // the reported sets really cover everything at the reported cost
        double cost = 0.0;
        for (int j : opt.chosen_sets) cost += inst.system.costs[static_cast<std::size_t>(j)];
        CHECK(cost == doctest::Approx(opt.cost).epsilon(1e-12));
        for (const Batch& batch : inst.batches) {
            for (const Element& e : batch.elements) {
                bool hit = false;
                for (int j : e.member_of) {
                    if (std::find(opt.chosen_sets.begin(), opt.chosen_sets.end(), j) !=
                        opt.chosen_sets.end()) {
                        hit = true;
                    }
                }
                CHECK(hit);
            }
        }
    }
}

TEST_CASE("offline_opt: guard and fallback") {
    Instance big;
    big.system = SetSystem::unweighted(31);
    Batch b;
    b.elements.push_back({1, 0, {0, 30}});
    big.batches.push_back(b);
    CHECK_THROWS_AS(offline_opt(big), TooLarge);
    const OptResult greedy = offline_opt(big, /*allow_greedy_fallback=*/true);
    CHECK(greedy.cost == 1.0);
    CHECK_FALSE(greedy.exact);

    Instance uncoverable;
    uncoverable.system = SetSystem::unweighted(2);
    Batch ub;
    ub.elements.push_back({1, 0, {}});
    uncoverable.batches.push_back(ub);
    CHECK_THROWS_AS(offline_opt(uncoverable), Infeasible);
}
