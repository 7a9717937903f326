// hrrank command-line front end. Talks to the library only through the C API.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hrrank/hrrank.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

// Statuses caused by the input rather than by the computation.
bool is_usage_status(hrr_status s) {
    return s == HRR_ERR_ARGUMENT || s == HRR_ERR_DIMENSION || s == HRR_ERR_PARSE || s == HRR_ERR_VALIDATION ||
           s == HRR_ERR_IO;
}

int report_error(hrr_status s) {
    std::cerr << "error: " << hrr_status_string(s);
    if (*hrr_last_error()) std::cerr << ": " << hrr_last_error();
    std::cerr << '\n';
    return is_usage_status(s) ? kExitUsage : kExitFail;
}

const char* outcome_name(hrr_outcome o) {
    switch (o) {
        case HRR_OUTCOME_RANK_P: return "RankP";
        case HRR_OUTCOME_RANK_EXCEEDS_P: return "RankExceedsP";
        case HRR_OUTCOME_NOT_GENERIC: return "NotGeneric";
        case HRR_OUTCOME_RANK_DEFICIENT: return "RankDeficient";
    }
    return "?";
}

const char* verdict_name(hrr_verdict v) {
    switch (v) {
        case HRR_VERDICT_NEGATIVE_WITNESS: return "NegativeWitness";
        case HRR_VERDICT_NO_REAL_POINT: return "NoRealPointFound";
        case HRR_VERDICT_REAL_POINTS_NO_WITNESS: return "RealPointsButNoNegativeWitness";
        case HRR_VERDICT_NONE: break;
    }
    return "none";
}

template <class H, void (*Destroy)(H)>
struct Owned {
    H h = nullptr;
    Owned() = default;
    Owned(const Owned&) = delete;
    Owned& operator=(const Owned&) = delete;
    ~Owned() { Destroy(h); }
};

using Tensor = Owned<hrr_tensor, hrr_tensor_destroy>;
using Decomp = Owned<hrr_decomposition, hrr_decomposition_destroy>;
using Census = Owned<hrr_census, hrr_census_destroy>;

std::string format_perm(const int p[3]) {
    return {static_cast<char>('0' + p[0]), static_cast<char>('0' + p[1]), static_cast<char>('0' + p[2])};
}

bool parse_perm(const std::string& text, hrr_decompose_options& o) {
    if (text == "auto") {
        o.orientation_auto = 1;
        return true;
    }
    if (text.size() != 3) return false;
    bool seen[3] = {false, false, false};
    for (int i = 0; i < 3; ++i) {
        const int d = text[i] - '0';
        if (d < 0 || d > 2 || seen[d]) return false;
        seen[d] = true;
        o.orientation[i] = d;
    }
    o.orientation_auto = 0;
    return true;
}

int cmd_rho(std::uint64_t n) {
    std::uint64_t r = 0;
    if (hrr_status s = hrr_hurwitz_radon(n, &r)) return report_error(s);
    std::cout << r << '\n';
    return kExitOk;
}

int cmd_typical(const std::vector<std::uint64_t>& dims) {
    hrr_rank_answer a;
    if (hrr_status s = hrr_typical_ranks(dims[0], dims[1], dims[2], &a)) return report_error(s);
    if (!a.known) {
        std::cout << "unknown [" << a.citation << "]\n";
        return kExitOk;
    }
    std::cout << '{';
    for (std::uint64_t r = a.low; r <= a.high; ++r) std::cout << (r == a.low ? "" : ", ") << r;
    std::cout << "} [" << a.citation << "]\n";
    return kExitOk;
}

int cmd_gen(const std::vector<std::size_t>& dims, std::uint64_t seed, const std::string& output) {
    Tensor t;
    if (hrr_status s = hrr_tensor_random_gaussian(dims[0], dims[1], dims[2], seed, &t.h)) return report_error(s);
    if (hrr_status s = hrr_tensor_save(t.h, output.c_str())) return report_error(s);
    std::cout << "wrote " << dims[0] << "x" << dims[1] << "x" << dims[2] << " tensor to " << output << '\n';
    return kExitOk;
}

int cmd_decompose(const std::string& input, const std::string& mode, std::size_t budget, double tol,
                  std::uint64_t seed, const std::string& orientation, bool integer_nodes,
                  const std::optional<std::string>& output) {
    hrr_decompose_options o;
    hrr_decompose_options_init(&o);
    o.mode = mode == "tall" ? HRR_MODE_TALL : mode == "generic" ? HRR_MODE_GENERIC : HRR_MODE_AUTO;
    if (!parse_perm(orientation, o)) {
        std::cerr << "error: --orientation must be 'auto' or a permutation such as 102\n";
        return kExitUsage;
    }
    o.budget = budget;
    o.tol = tol;
    o.seed = seed;
    o.integer_nodes = integer_nodes ? 1 : 0;

    Tensor t;
    if (hrr_status s = hrr_tensor_load(input.c_str(), &t.h)) return report_error(s);
    hrr_decompose_report r;
    Decomp d;
    const hrr_status s = hrr_decompose(t.h, &o, &r, &d.h);
    if (s != HRR_OK && s != HRR_ERR_NO_DECOMPOSITION && s != HRR_ERR_NOT_GENERIC) return report_error(s);

    std::cout << "mode: " << (r.mode_used == HRR_MODE_TALL ? "tall" : "generic") << '\n';
    std::cout << "orientation: " << format_perm(r.orientation) << '\n';
    std::cout << "outcome: " << outcome_name(r.outcome) << '\n';
    if (s == HRR_OK) {
        std::printf("rank: %zu\nresidual: %.3e\n", r.rank, r.residual);
        if (output) {
            if (hrr_status w = hrr_decomposition_save(d.h, output->c_str())) return report_error(w);
            std::cout << "wrote " << *output << '\n';
        }
        return kExitOk;
    }
    if (r.outcome == HRR_OUTCOME_RANK_EXCEEDS_P) {
        std::cout << "rank >= p+1 (probabilistic evidence: no real hypersurface point in " << r.directions_tried
                  << " directions)\n";
    } else {
        std::cout << "detail: " << hrr_last_error() << '\n';
    }
    if (r.verdict != HRR_VERDICT_NONE) {
        std::cout << "verdict: " << verdict_name(r.verdict) << " (" << r.points_found << " points, "
                  << r.directions_tried << " directions, seed " << seed << ")\n";
    }
    return kExitFail;
}

int cmd_classify(const std::string& input, std::size_t directions, std::uint64_t seed) {
    Tensor t;
    if (hrr_status s = hrr_tensor_load(input.c_str(), &t.h)) return report_error(s);
    hrr_classify_report r;
    std::vector<double> witness(64);
    if (hrr_status s = hrr_classify(t.h, directions, seed, &r, witness.data(), witness.size()))
        return report_error(s);
    if (r.witness_length > witness.size()) {
        witness.resize(r.witness_length);
        if (hrr_status s = hrr_classify(t.h, directions, seed, &r, witness.data(), witness.size()))
            return report_error(s);
    }
    std::cout << "input: " << (r.input_was_contraction ? "contraction Y" : "tensor (contracted)") << '\n';
    std::cout << "verdict: " << verdict_name(r.verdict) << '\n';
    std::cout << "directions: " << r.directions_tried << "\npoints: " << r.points_found << "\nseed: " << seed
              << '\n';
    if (r.verdict == HRR_VERDICT_NEGATIVE_WITNESS) {
        std::cout << "witness: [";
        for (std::size_t i = 0; i < r.witness_length; ++i) std::printf("%s%.17g", i ? ", " : "", witness[i]);
        std::printf("]\ndet: %.6e\n", r.witness_det);
    } else if (r.verdict == HRR_VERDICT_NO_REAL_POINT) {
        std::cout << "rank >= p+1 (probabilistic evidence)\n";
    }
    return kExitOk;
}

int cmd_census(std::size_t m, std::size_t n, std::size_t trials, std::uint64_t seed, std::size_t threads,
               const std::optional<std::string>& output) {
    Census c;
    if (hrr_status s = hrr_census_run(m, n, trials, seed, threads, &c.h)) return report_error(s);
    const hrr_outcome all[] = {HRR_OUTCOME_RANK_P, HRR_OUTCOME_RANK_EXCEEDS_P, HRR_OUTCOME_NOT_GENERIC,
                               HRR_OUTCOME_RANK_DEFICIENT};
    std::printf("census m=%zu n=%zu p=%zu trials=%zu seed=%llu\n", m, n, (m - 1) * n, trials,
                static_cast<unsigned long long>(seed));
    for (hrr_outcome o : all) {
        std::size_t count = 0;
        double fraction = 0.0;
        hrr_census_count(c.h, o, &count);
        hrr_census_fraction(c.h, o, &fraction);
        std::printf("  %-14s %6zu  %.4f\n", outcome_name(o), count, fraction);
    }
    double worst = 0.0;
    hrr_census_max_residual(c.h, &worst);
    std::printf("max RankP residual: %.3e\n", worst);
    if (output) {
        if (hrr_status s = hrr_census_save(c.h, output->c_str())) return report_error(s);
        std::cout << "wrote " << *output << '\n';
    }
    return kExitOk;
}

int cmd_verify(const std::string& tensor, const std::string& decomposition, double tol) {
    Tensor t;
    Decomp d;
    if (hrr_status s = hrr_tensor_load(tensor.c_str(), &t.h)) return report_error(s);
    if (hrr_status s = hrr_decomposition_load(decomposition.c_str(), &d.h)) return report_error(s);
    double res = 0.0;
    if (hrr_status s = hrr_relative_residual(t.h, d.h, &res)) return report_error(s);
    std::size_t rank = 0;
    hrr_decomposition_rank(d.h, &rank);
    const bool pass = res <= tol;
    std::printf("rank: %zu\nresidual: %.3e\ntol: %.3e\n%s\n", rank, res, tol, pass ? "PASS" : "FAIL");
    return pass ? kExitOk : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hrrank: explicit tensor decompositions, typical ranks and rank census"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(hrr_version()));

    std::uint64_t rho_n = 0;
    auto* rho = app.add_subcommand("rho", "Hurwitz-Radon number rho(n)");
    rho->add_option("n", rho_n, "positive integer")->required()->check(CLI::PositiveNumber);

    std::vector<std::uint64_t> tr_dims;
    auto* typical = app.add_subcommand("typical-ranks", "typical ranks of an m x n x p real tensor");
    typical->add_option("dims", tr_dims, "three positive dimensions")->required()->expected(3)->check(
        CLI::PositiveNumber);

    std::vector<std::size_t> gen_dims;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "write a seeded standard Gaussian tensor");
    gen->add_option("--dims", gen_dims, "d1 d2 d3")->required()->expected(3)->check(CLI::PositiveNumber);
    gen->add_option("--seed", gen_seed, "seed")->capture_default_str();
    gen->add_option("--output", gen_out, "tensor file")->required();

    std::string dec_in, dec_mode = "auto", dec_orient = "auto";
    std::optional<std::string> dec_out;
    std::size_t dec_budget = 0;
    double dec_tol = 1e-8;
    std::uint64_t dec_seed = 0;
    bool dec_int_nodes = false;
    auto* dec = app.add_subcommand("decompose", "minimal-rank decomposition of a tensor file");
    dec->add_option("--input", dec_in, "tensor file")->required();
    dec->add_option("--mode", dec_mode, "construction")
        ->check(CLI::IsMember({"tall", "generic", "auto"}))
        ->capture_default_str();
    dec->add_option("--budget", dec_budget, "max sampling directions (0: 64p)")->capture_default_str();
    dec->add_option("--tol", dec_tol, "reconstruction tolerance")->check(CLI::PositiveNumber)->capture_default_str();
    dec->add_option("--seed", dec_seed, "direction sampling seed")->capture_default_str();
    dec->add_option("--orientation", dec_orient, "'auto' or mode order such as 102")->capture_default_str();
    dec->add_flag("--integer-nodes", dec_int_nodes, "tall mode: nodes 1..u instead of equispaced");
    dec->add_option("--output", dec_out, "decomposition file");

    std::string cls_in;
    std::size_t cls_dirs = 1000;
    std::uint64_t cls_seed = 0;
    auto* cls = app.add_subcommand("classify", "sign class of det M(a, Y)");
    cls->add_option("--input", cls_in, "tensor file (n x n x l is read as Y)")->required();
    cls->add_option("--directions", cls_dirs, "number of sampled directions")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cls->add_option("--seed", cls_seed, "seed")->capture_default_str();

    std::size_t cen_m = 0, cen_n = 0, cen_trials = 0, cen_threads = 0;
    std::uint64_t cen_seed = 0;
    std::optional<std::string> cen_out;
    auto* cen = app.add_subcommand("census", "Monte Carlo rank census over Gaussian n x (m-1)n x m tensors");
    cen->add_option("--m", cen_m, "number of slices")->required();
    cen->add_option("--n", cen_n, "slice rows")->required();
    cen->add_option("--trials", cen_trials, "number of trials")->required();
    cen->add_option("--seed", cen_seed, "seed")->capture_default_str();
    cen->add_option("--threads", cen_threads, "worker threads (0: all cores)")->capture_default_str();
    cen->add_option("--output", cen_out, "report file");

    std::string ver_t, ver_d;
    double ver_tol = 1e-8;
    auto* ver = app.add_subcommand("verify", "relative residual of a decomposition against a tensor");
    ver->add_option("--tensor", ver_t, "tensor file")->required();
    ver->add_option("--decomposition", ver_d, "decomposition file")->required();
    ver->add_option("--tol", ver_tol, "tolerance")->check(CLI::NonNegativeNumber)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (*rho) return cmd_rho(rho_n);
    if (*typical) return cmd_typical(tr_dims);
    if (*gen) return cmd_gen(gen_dims, gen_seed, gen_out);
    if (*dec) return cmd_decompose(dec_in, dec_mode, dec_budget, dec_tol, dec_seed, dec_orient, dec_int_nodes, dec_out);
    if (*cls) return cmd_classify(cls_in, cls_dirs, cls_seed);
    if (*cen) return cmd_census(cen_m, cen_n, cen_trials, cen_seed, cen_threads, cen_out);
    if (*ver) return cmd_verify(ver_t, ver_d, ver_tol);
    return kExitUsage;
}
