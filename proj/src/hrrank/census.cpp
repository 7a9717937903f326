#include "hrrank/census.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include <json.hpp>

#include "hrrank/random.hpp"

namespace hrr {

const char* to_string(Outcome o) noexcept {
    switch (o) {
        case Outcome::RankP: return "RankP";
        case Outcome::RankExceedsP: return "RankExceedsP";
        case Outcome::NotGeneric: return "NotGeneric";
        case Outcome::RankDeficient: return "RankDeficient";
    }
    return "?";
}

Outcome outcome_of(const GenericResult& r) noexcept {
    switch (r.index()) {
        case 0: return Outcome::RankP;
        case 1: return Outcome::RankExceedsP;
        case 2: return Outcome::RankDeficient;
        default: return Outcome::NotGeneric;
    }
}

std::size_t CensusReport::count(Outcome o) const {
    return static_cast<std::size_t>(
        std::count_if(per_trial.begin(), per_trial.end(), [o](const TrialRecord& t) { return t.outcome == o; }));
}

double CensusReport::fraction(Outcome o) const {
    return per_trial.empty() ? 0.0 : static_cast<double>(count(o)) / static_cast<double>(per_trial.size());
}

double CensusReport::max_residual() const {
    double r = 0.0;
    for (const TrialRecord& t : per_trial)
        if (t.residual) r = std::max(r, *t.residual);
    return r;
}

std::string CensusReport::to_json() const {
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["m"] = m;
    doc["n"] = n;
    doc["p"] = p;
    doc["trials"] = trials;
    doc["seed"] = seed;
    doc["tolerances"] = {{"tol_rec", options.tol_rec},
                         {"tol_pt", options.tol_pt},
                         {"pivot_ratio", options.pivot_ratio},
                         {"direction_budget", options.budget == 0 ? 64 * p : options.budget}};
    ordered_json records = ordered_json::array();
    for (const TrialRecord& t : per_trial) {
        ordered_json rec;
        rec["index"] = t.index;
        rec["seed"] = t.seed;
        rec["outcome"] = to_string(t.outcome);
        if (t.residual) rec["residual"] = *t.residual;
        records.push_back(std::move(rec));
    }
    doc["perTrial"] = std::move(records);
    ordered_json fractions;
    for (Outcome o : kAllOutcomes) fractions[to_string(o)] = fraction(o);
    doc["fractions"] = std::move(fractions);
    doc["notes"] = {{"RankExceedsP", "rank >= p+1 (probabilistic evidence: no real hypersurface point was found)"}};
    return doc.dump(2) + "\n";
}

CensusReport run_census(std::size_t m, std::size_t n, std::size_t trials, std::uint64_t seed, std::size_t threads) {
    if (m < 3 || m > n) throw ArgumentError("census: need 3 <= m <= n");
    if (trials < 1) throw ArgumentError("census: need at least one trial");
    CensusReport report;
    report.m = m;
    report.n = n;
    report.p = (m - 1) * n;
    report.trials = trials;
    report.seed = seed;
    report.per_trial.resize(trials);

    auto run_trial = [&](std::size_t i) {
        const std::uint64_t s = derive_seed(seed, i);
        DecomposeOptions opts = report.options;
        opts.seed = s;
        const Tensor3 t = random_gaussian({n, report.p, m}, s);
        const GenericResult r = decompose_generic(t, opts);
        TrialRecord rec{i, s, outcome_of(r), std::nullopt};
        if (const auto* ok = std::get_if<RankP>(&r)) rec.residual = ok->residual;
        report.per_trial[i] = rec;
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, trials);
    if (threads <= 1) {
        for (std::size_t i = 0; i < trials; ++i) run_trial(i);
        return report;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < trials; i = next++) run_trial(i);
        });
    }
    pool.clear();
    return report;
}

}  // namespace hrr
