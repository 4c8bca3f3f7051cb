// One line per acceptance criterion; exit status 1 if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "oracles.hpp"
#include "polypack/generators.hpp"
#include "polypack/scoring.hpp"
#include "polypack/selection.hpp"
#include "polypack/solver.hpp"
#include "polypack/verifier.hpp"
#include "support.hpp"

using namespace polypack;
using namespace testing_support;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& why) {
        if (!ok && pass) detail << "first failure: " << why << "; ";
        pass = pass && ok;
    }
};

Instance family_instance(Family f, std::uint64_t seed, std::size_t n) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.n_target = n;
    return generate(f, cfg);
}

const Family kFamilies[] = {Family::Random, Family::Jigsaw, Family::Atris, Family::Satris};

// 1. Equal-to-best scores 1, half-of-best scores 1/4, exactly.
void scoring_exactness(Outcome& o) {
    int checked = 0;
    for (std::int64_t best : {2LL, 10LL, 1000LL, 123456LL, (1LL << 39), (1LL << 40) - 2}) {
        o.require(instance_score(best, best) == 1, "equal-to-best at " + std::to_string(best));
        o.require(instance_score(best / 2, best) == Rational(1, 4), "half-of-best at " + std::to_string(best));
        o.require(to_exact_string(instance_score(best / 2, best)) == "1/4", "exact string");
        checked += 2;
    }
    o.detail << checked << " exact comparisons";
}

// 2. Quad-tree verifier against the all-pairs oracle.
void verifier_equivalence(Outcome& o) {
    std::mt19937_64 rng(2024);
    std::size_t total = 0, agree = 0, valid = 0, duplicates = 0, touching_valid = 0;
    for (int k = 0; total < 600; ++k) {
        Instance inst = family_instance(kFamilies[k % 4], 100 + static_cast<std::uint64_t>(k), 10 + static_cast<std::size_t>(k * 7) % 190);
        if (inst.items.size() > 200) continue;
        std::vector<Solution> sols;
        sols.push_back(random_solution(inst, rng, true));
        sols.push_back(random_solution(inst, rng, false));
        sols.push_back(repair_greedily(inst, random_solution(inst, rng, false)));
        if (k % 4 == 0) {
            SolverConfig cfg;
            cfg.seed = static_cast<std::uint64_t>(k);
            cfg.time_budget = 0.2;
            sols.push_back(solve_greedy(inst, cfg));
        }
        for (const Solution& s : sols) {
            VerifyReport a = verify(inst, s), b = oracle::brute_verify(inst, s);
            ++total;
            agree += a.valid == b.valid && a.packed_value == b.packed_value && a.violation == b.violation;
            valid += a.valid;
            duplicates += a.violation && a.violation->kind == Violation::Kind::DuplicateItem;
            if (a.valid) {
                // Count solutions where some placed boxes share boundary.
                for (std::size_t i = 0; i < s.placements.size() && touching_valid < total; ++i) {
                    Box bi = inst.items[s.placements[i].item_index].polygon.bounds().translated(s.placements[i].offset);
                    bool touch = false;
                    for (std::size_t j = i + 1; j < s.placements.size() && !touch; ++j) {
                        Box bj = inst.items[s.placements[j].item_index].polygon.bounds().translated(s.placements[j].offset);
                        touch = closed_intersect(bi, bj) && !interiors_intersect(bi, bj);
                    }
                    if (touch) {
                        ++touching_valid;
                        break;
                    }
                }
            }
        }
    }
    o.require(agree == total, std::to_string(total - agree) + " disagreements");
    o.require(total >= 500, "too few solutions");
    o.require(duplicates > 0 && valid > 0 && valid < total, "corpus lacks a verdict class");
    o.detail << agree << "/" << total << " agree (" << valid << " valid, " << duplicates << " duplicate-index, "
             << touching_valid << " valid with touching boxes)";
}

// 3. Unperturbed single-copy jigsaw tiles the container.
void jigsaw_tiling(Outcome& o) {
    int ok = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        GenConfig cfg;
        cfg.seed = seed;
        cfg.jigsaw_copies = 1;
        cfg.jigsaw_perturb = false;
        JigsawOutput out = gen_jigsaw_layout(cfg);
        Rational area = 0;
        for (const Item& it : out.instance.items) area += it.polygon.area();
        VerifyReport rep = verify(out.instance, out.layout);
        bool good = area == out.instance.container.area() && rep.valid && rep.packed_value == out.instance.total_value() &&
                    out.layout.placements.size() == out.instance.items.size();
        o.require(good, "seed " + std::to_string(seed));
        ok += good;
    }
    o.detail << ok << "/20 seeds tile exactly";
}

bool json_integral(const Instance& inst) {
    auto j = nlohmann::json::parse(write_instance(inst));
    auto ints = [](const nlohmann::json& a) {
        for (const auto& v : a)
            if (!v.is_number_integer()) return false;
        return true;
    };
    if (!ints(j["container"]["x"]) || !ints(j["container"]["y"])) return false;
    for (const auto& it : j["items"])
        if (!ints(it["x"]) || !ints(it["y"]) || !it["value"].is_number_integer()) return false;
    return true;
}

// 4. atris/satris: area threshold, integrality, value budget at the largest size.
void generator_guarantees(Outcome& o) {
    int instances = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        for (Family f : {Family::Atris, Family::Satris}) {
            for (Rational t : {Rational(1), Rational(3, 2), Rational(2)}) {
                GenConfig cfg;
                cfg.seed = seed;
                cfg.n_target = 50 + seed * 20;
                cfg.area_multiple_t = t;
                Instance inst = generate(f, cfg);
                Rational area = 0, largest = 0;
                for (const Item& it : inst.items) {
                    area += it.polygon.area();
                    largest = std::max(largest, it.polygon.area());
                }
                const Rational c = inst.container.area();
                o.require(area > t * c && area <= t * c + largest, inst.name + " area ratio");
                o.require(json_integral(inst), inst.name + " integrality");
                o.require(inst.total_value() < (std::int64_t{1} << 40), inst.name + " value sum");
                ++instances;
            }
        }
    }
    std::int64_t largest_sum = 0;
    std::size_t largest_n = 0;
    for (Family f : {Family::Atris, Family::Satris}) {
        GenConfig cfg;
        cfg.seed = 77;
        cfg.n_target = 50000;
        cfg.area_multiple_t = 2;
        Instance inst = generate(f, cfg);
        o.require(json_integral(inst), "large instance integrality");
        o.require(inst.total_value() < (std::int64_t{1} << 40), "large instance value sum");
        largest_sum = std::max(largest_sum, inst.total_value());
        largest_n = std::max(largest_n, inst.items.size());
    }
    o.detail << instances << " sweep instances; largest has " << largest_n << " items, value sum " << largest_sum
             << " < 2^40";
}

// 5. Shelf packing places every square when their area is at most half.
void moon_moser(Outcome& o) {
    std::mt19937_64 rng(5);
    int full = 0;
    std::size_t squares = 0;
    for (int k = 0; k < 50; ++k) {
        Instance inst = moon_moser_set(rng, 200 + static_cast<Coord>(rng() % 1800));
        SolverConfig cfg;
        cfg.mode = PlacementMode::Shelf;
        cfg.ordering = Ordering::AreaDesc;
        Solution s = solve_greedy(inst, cfg);
        bool ok = s.placements.size() == inst.items.size() && verify(inst, s).valid;
        o.require(ok, "set " + std::to_string(k));
        full += ok;
        squares += inst.items.size();
    }
    o.detail << full << "/50 sets fully packed (" << squares << " squares)";
}

// 6. Feasibility, monotone traces, and the local search improvement rate.
void solver_quality(Outcome& o) {
    std::size_t solved = 0;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        for (Family f : kFamilies) {
            Instance inst = family_instance(f, seed, 80);
            SolverConfig cfg;
            cfg.seed = seed;
            cfg.time_budget = 2.0;
            SolveStats st;
            Solution s = solve(inst, cfg, &st);
            o.require(verify(inst, s).valid, inst.name + " infeasible");
            for (std::size_t i = 1; i < st.trace.size(); ++i) o.require(st.trace[i] >= st.trace[i - 1], inst.name + " trace");
            ++solved;
        }
    }
    int improved = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        GenConfig g;
        g.seed = seed;
        g.n_target = 30 + seed * 3;
        Instance inst = gen_random(g);
        SolverConfig cfg;
        cfg.seed = seed;
        cfg.time_budget = 2.0;
        Solution greedy = solve_greedy(inst, cfg);
        SolveStats st;
        Solution ls = improve_local(inst, greedy, cfg, &st);
        VerifyReport a = verify(inst, greedy), b = verify(inst, ls);
        o.require(a.valid && b.valid, inst.name + " infeasible");
        o.require(b.packed_value >= a.packed_value, inst.name + " lost value");
        for (std::size_t i = 1; i < st.trace.size(); ++i) o.require(st.trace[i] > st.trace[i - 1], inst.name + " trace");
        improved += b.packed_value > a.packed_value;
    }
    o.require(improved >= 10, "improvement rate below half");
    o.detail << solved << " solve runs verified; local search improved greedy on " << improved << "/20";
}

std::vector<FeatureVector> two_blobs(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0, 1);
    std::vector<FeatureVector> out;
    for (int b = 0; b < 2; ++b) {
        for (int i = 0; i < 20; ++i) {
            FeatureVector f{"blob" + std::to_string(b) + "_" + std::to_string(i), "", {}};
            for (std::size_t d = 0; d < kMetricCount; ++d) f.values.push_back(noise(rng) + (b ? 50.0 : 0.0));
            out.push_back(std::move(f));
        }
    }
    return out;
}

// 7. Selection: blob separation and corpus coverage.
void selection_pipeline(Outcome& o) {
    int separated = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        SelectionConfig cfg;
        cfg.k = 2;
        cfg.seed = seed;
        auto r = select_diverse(two_blobs(seed + 1), cfg);
        bool ok = r.selected.size() == 2 && r.selected[0].rfind("blob0_", 0) == 0 && r.selected[1].rfind("blob1_", 0) == 0;
        separated += ok;
    }
    o.require(separated == 100, "blob seeds missed");

    std::vector<Instance> corpus;
    for (int k = 0; k < 500; ++k) {
        GenConfig cfg;
        cfg.seed = 1000 + static_cast<std::uint64_t>(k);
        cfg.n_target = 10 + static_cast<std::size_t>((k * 37) % 140);
        cfg.jigsaw_line_count = 4 + static_cast<std::size_t>(k % 9);
        cfg.jigsaw_copies = 1 + static_cast<std::size_t>(k % 3);
        cfg.area_multiple_t = Rational(1) + Rational(k % 5, 4);
        corpus.push_back(generate(kFamilies[k % 4], cfg));
    }
    SelectionConfig cfg;
    cfg.k = 180;
    cfg.seed = 7;
    auto picked = select_diverse(corpus, cfg);
    std::set<std::string> names(picked.begin(), picked.end());
    std::set<std::string> families;
    for (const auto& inst : corpus)
        if (names.count(inst.name)) families.insert(inst.meta->generator);
    o.require(picked.size() == 180 && names.size() == 180, "selection size");
    o.require(families.size() == 4, "family coverage");
    o.detail << separated << "/100 blob seeds; corpus pick " << names.size() << " distinct names from " << families.size()
             << " families";
}

// 8. Two solver configurations as teams, scored and checked against the oracle.
void leaderboard_drill(Outcome& o) {
    std::vector<Instance> instances;
    for (int k = 0; k < 10; ++k) instances.push_back(family_instance(kFamilies[k % 4], 500 + static_cast<std::uint64_t>(k), 40 + k * 10));
    std::vector<std::string> names;
    std::vector<SubmissionRecord> records;
    int minute = 0;
    for (const Instance& inst : instances) {
        names.push_back(inst.name);
        SolverConfig greedy;
        greedy.ordering = Ordering::AreaDesc;
        greedy.time_budget = 1.0;
        SolverConfig full;
        full.time_budget = 3.0;
        full.seed = 3;
        for (auto [team, sol] : {std::pair{std::string("greedy-area"), solve_greedy(inst, greedy)},
                                 std::pair{std::string("greedy-plus-ls"), solve(inst, full)}}) {
            VerifyReport rep = verify(inst, sol);
            o.require(rep.valid, team + " on " + inst.name);
            char ts[40];
            std::snprintf(ts, sizeof ts, "2024-03-01T%02d:%02d:00Z", minute / 60, minute % 60);
            ++minute;
            SubmissionRecord r{team, inst.name, rep.packed_value, ts, parse_iso8601(ts)};
            records.push_back(r);
        }
    }
    Leaderboard board = build_leaderboard(records, names);
    std::vector<oracle::Claim> claims;
    for (const auto& r : records) claims.push_back({r.team, r.instance, r.value});
    auto expect = oracle::team_totals(claims, names);
    o.require(board.ranking.size() == 2, "team count");
    for (const auto& st : board.ranking) o.require(to_exact_string(st.total) == expect.at(st.team), st.team + " total");
    for (const auto& st : board.ranking) o.detail << st.team << " " << to_fixed_string(st.total, 2) << "; ";
    o.detail << "totals match the recomputation exactly";
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* title;
        double limit_seconds;
        std::function<void(Outcome&)> body;
    };
    const Criterion criteria[] = {
        {1, "scoring exactness", 1, scoring_exactness},
        {2, "verifier oracle equivalence", 120, verifier_equivalence},
        {3, "jigsaw tiling round trip", 30, jigsaw_tiling},
        {4, "generator guarantees at scale", 300, generator_guarantees},
        {5, "shelf packing of squares at half area", 60, moon_moser},
        {6, "solver feasibility and monotonicity", 600, solver_quality},
        {7, "selection pipeline", 300, selection_pipeline},
        {8, "end-to-end leaderboard drill", 900, leaderboard_drill},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        Outcome o;
        auto t0 = std::chrono::steady_clock::now();
        try {
            c.body(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.limit_seconds) o.require(false, "over the time limit");
        failures += !o.pass;
        char timing[64];
        std::snprintf(timing, sizeof timing, "%.1fs of %.0fs", secs, c.limit_seconds);
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.title << "): " << o.detail.str() << " ["
                  << timing << "]" << std::endl;
    }
    return failures ? 1 : 0;
}
