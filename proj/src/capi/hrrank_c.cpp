#include "hrrank/hrrank.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "hrrank/census.hpp"
#include "hrrank/driver.hpp"
#include "hrrank/errors.hpp"
#include "hrrank/generic.hpp"
#include "hrrank/io.hpp"
#include "hrrank/random.hpp"
#include "hrrank/rank_tables.hpp"
#include "hrrank/tensor.hpp"

struct hrr_tensor_s {
    hrr::Tensor3 t;
};

struct hrr_decomposition_s {
    hrr::Decomposition d;
};

struct hrr_census_s {
    hrr::CensusReport report;
    std::string json;
};

namespace {

thread_local std::string g_last_error;

hrr_status fail(hrr_status s, const char* what) {
    g_last_error = what;
    return s;
}

template <class F>
hrr_status guarded(F&& f) noexcept {
    g_last_error.clear();
    try {
        return f();
    } catch (const hrr::NoDecompositionAtP& e) {
        return fail(HRR_ERR_NO_DECOMPOSITION, e.what());
    } catch (const hrr::DimensionError& e) {
        return fail(HRR_ERR_DIMENSION, e.what());
    } catch (const hrr::ArgumentError& e) {
        return fail(HRR_ERR_ARGUMENT, e.what());
    } catch (const hrr::SingularError& e) {
        return fail(HRR_ERR_SINGULAR, e.what());
    } catch (const hrr::NotGenericError& e) {
        return fail(HRR_ERR_NOT_GENERIC, e.what());
    } catch (const hrr::RankDeficientError& e) {
        return fail(HRR_ERR_RANK_DEFICIENT, e.what());
    } catch (const hrr::ParseError& e) {
        return fail(HRR_ERR_PARSE, e.what());
    } catch (const hrr::ValidationError& e) {
        return fail(HRR_ERR_VALIDATION, e.what());
    } catch (const hrr::Error& e) {
        return fail(HRR_ERR_IO, e.what());
    } catch (const std::bad_alloc&) {
        return fail(HRR_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(HRR_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(HRR_ERR_INTERNAL, "unknown error");
    }
}

#define HRR_REQUIRE(cond)                                                 \
    do {                                                                  \
        if (!(cond)) return fail(HRR_ERR_ARGUMENT, "null or bad argument: " #cond); \
    } while (0)

hrr_verdict to_c(hrr::Verdict v) {
    switch (v) {
        case hrr::Verdict::NegativeWitness: return HRR_VERDICT_NEGATIVE_WITNESS;
        case hrr::Verdict::NoRealPointFound: return HRR_VERDICT_NO_REAL_POINT;
        case hrr::Verdict::RealPointsButNoNegativeWitness: return HRR_VERDICT_REAL_POINTS_NO_WITNESS;
    }
    return HRR_VERDICT_NONE;
}

hrr_outcome to_c(hrr::Outcome o) {
    switch (o) {
        case hrr::Outcome::RankP: return HRR_OUTCOME_RANK_P;
        case hrr::Outcome::RankExceedsP: return HRR_OUTCOME_RANK_EXCEEDS_P;
        case hrr::Outcome::NotGeneric: return HRR_OUTCOME_NOT_GENERIC;
        case hrr::Outcome::RankDeficient: return HRR_OUTCOME_RANK_DEFICIENT;
    }
    return HRR_OUTCOME_NOT_GENERIC;
}

bool from_c(hrr_outcome o, hrr::Outcome& out) {
    switch (o) {
        case HRR_OUTCOME_RANK_P: out = hrr::Outcome::RankP; return true;
        case HRR_OUTCOME_RANK_EXCEEDS_P: out = hrr::Outcome::RankExceedsP; return true;
        case HRR_OUTCOME_NOT_GENERIC: out = hrr::Outcome::NotGeneric; return true;
        case HRR_OUTCOME_RANK_DEFICIENT: out = hrr::Outcome::RankDeficient; return true;
    }
    return false;
}

hrr_mode to_c(hrr::Mode m) {
    switch (m) {
        case hrr::Mode::Auto: return HRR_MODE_AUTO;
        case hrr::Mode::Tall: return HRR_MODE_TALL;
        case hrr::Mode::Generic: return HRR_MODE_GENERIC;
    }
    return HRR_MODE_AUTO;
}

hrr::ModePerm to_perm(const int p[3]) { return {p[0], p[1], p[2]}; }

}  // namespace

extern "C" {

const char* hrr_version(void) { return "0.1.0"; }

const char* hrr_status_string(hrr_status status) {
    switch (status) {
        case HRR_OK: return "ok";
        case HRR_ERR_ARGUMENT: return "invalid argument";
        case HRR_ERR_DIMENSION: return "dimension mismatch";
        case HRR_ERR_SINGULAR: return "singular matrix";
        case HRR_ERR_NOT_GENERIC: return "input not generic";
        case HRR_ERR_RANK_DEFICIENT: return "rank deficient";
        case HRR_ERR_NO_DECOMPOSITION: return "no decomposition at minimal rank";
        case HRR_ERR_PARSE: return "parse error";
        case HRR_ERR_VALIDATION: return "validation error";
        case HRR_ERR_IO: return "i/o error";
        case HRR_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* hrr_last_error(void) { return g_last_error.c_str(); }

hrr_status hrr_hurwitz_radon(uint64_t n, uint64_t* out) {
    return guarded([&] {
        HRR_REQUIRE(out);
        *out = hrr::hurwitz_radon(n);
        return HRR_OK;
    });
}

hrr_status hrr_typical_ranks(uint64_t m1, uint64_t m2, uint64_t m3, hrr_rank_answer* out) {
    return guarded([&] {
        HRR_REQUIRE(out);
        const hrr::TypicalRankAnswer a = hrr::typical_ranks(m1, m2, m3);
        // Citation tags are string literals inside the library; intern them.
        static const char* const kTags[] = {"matrix",   "two-slice-square", "two-slice",
                                            "two-slice-saturated", "saturated", "tall",
                                            "hurwitz-radon-singleton", "hurwitz-radon-pair", "uncovered"};
        out->citation = "uncovered";
        for (const char* tag : kTags)
            if (a.citation == tag) out->citation = tag;
        out->known = a.known() ? 1 : 0;
        out->low = a.low.value_or(0);
        out->high = a.high.value_or(0);
        return HRR_OK;
    });
}

hrr_status hrr_tensor_create(size_t d1, size_t d2, size_t d3, const double* data, hrr_tensor* out) {
    return guarded([&] {
        HRR_REQUIRE(out);
        *out = nullptr;
        const std::size_t len = d1 * d2 * d3;
        HRR_REQUIRE(data || len == 0);
        hrr::Tensor3 t({d1, d2, d3}, std::vector<double>(data, data + len));
        *out = new hrr_tensor_s{std::move(t)};
        return HRR_OK;
    });
}

hrr_status hrr_tensor_random_gaussian(size_t d1, size_t d2, size_t d3, uint64_t seed, hrr_tensor* out) {
    return guarded([&] {
        HRR_REQUIRE(out);
        *out = new hrr_tensor_s{hrr::random_gaussian(hrr::Shape3{d1, d2, d3}, seed)};
        return HRR_OK;
    });
}

hrr_status hrr_tensor_load(const char* path, hrr_tensor* out) {
    return guarded([&] {
        HRR_REQUIRE(path && out);
        *out = nullptr;
        *out = new hrr_tensor_s{hrr::load_tensor(path)};
        return HRR_OK;
    });
}

hrr_status hrr_tensor_save(hrr_tensor t, const char* path) {
    return guarded([&] {
        HRR_REQUIRE(t && path);
        hrr::save_tensor(path, t->t);
        return HRR_OK;
    });
}

hrr_status hrr_tensor_dims(hrr_tensor t, size_t dims[3]) {
    return guarded([&] {
        HRR_REQUIRE(t && dims);
        for (int i = 0; i < 3; ++i) dims[i] = t->t.shape()[i];
        return HRR_OK;
    });
}

hrr_status hrr_tensor_data(hrr_tensor t, const double** data, size_t* length) {
    return guarded([&] {
        HRR_REQUIRE(t && data && length);
        *data = t->t.data().data();
        *length = t->t.data().size();
        return HRR_OK;
    });
}

hrr_status hrr_tensor_permute(hrr_tensor t, const int perm[3], hrr_tensor* out) {
    return guarded([&] {
        HRR_REQUIRE(t && perm && out);
        *out = nullptr;
        const hrr::ModePerm p = to_perm(perm);
        if (!hrr::is_valid_perm(p)) return fail(HRR_ERR_ARGUMENT, "invalid mode permutation");
        *out = new hrr_tensor_s{hrr::permute_modes(t->t, p)};
        return HRR_OK;
    });
}

void hrr_tensor_destroy(hrr_tensor t) { delete t; }

hrr_status hrr_decomposition_load(const char* path, hrr_decomposition* out) {
    return guarded([&] {
        HRR_REQUIRE(path && out);
        *out = nullptr;
        *out = new hrr_decomposition_s{hrr::load_decomposition(path)};
        return HRR_OK;
    });
}

hrr_status hrr_decomposition_save(hrr_decomposition d, const char* path) {
    return guarded([&] {
        HRR_REQUIRE(d && path);
        hrr::save_decomposition(path, d->d);
        return HRR_OK;
    });
}

hrr_status hrr_decomposition_dims(hrr_decomposition d, size_t dims[3]) {
    return guarded([&] {
        HRR_REQUIRE(d && dims);
        for (int i = 0; i < 3; ++i) dims[i] = d->d.shape[i];
        return HRR_OK;
    });
}

hrr_status hrr_decomposition_rank(hrr_decomposition d, size_t* rank) {
    return guarded([&] {
        HRR_REQUIRE(d && rank);
        *rank = d->d.rank();
        return HRR_OK;
    });
}

hrr_status hrr_decomposition_term(hrr_decomposition d, size_t index, const double** u, const double** v,
                                  const double** w) {
    return guarded([&] {
        HRR_REQUIRE(d && u && v && w);
        if (index >= d->d.rank()) return fail(HRR_ERR_ARGUMENT, "term index out of range");
        const hrr::RankOneTerm& term = d->d.terms[index];
        *u = term.u.data();
        *v = term.v.data();
        *w = term.w.data();
        return HRR_OK;
    });
}

hrr_status hrr_decomposition_reconstruct(hrr_decomposition d, hrr_tensor* out) {
    return guarded([&] {
        HRR_REQUIRE(d && out);
        *out = nullptr;
        *out = new hrr_tensor_s{hrr::reconstruct(d->d)};
        return HRR_OK;
    });
}

void hrr_decomposition_destroy(hrr_decomposition d) { delete d; }

hrr_status hrr_relative_residual(hrr_tensor t, hrr_decomposition d, double* out) {
    return guarded([&] {
        HRR_REQUIRE(t && d && out);
        *out = hrr::relative_residual(t->t, d->d);
        return HRR_OK;
    });
}

void hrr_decompose_options_init(hrr_decompose_options* opts) {
    if (!opts) return;
    opts->mode = HRR_MODE_AUTO;
    opts->orientation_auto = 1;
    opts->orientation[0] = 0;
    opts->orientation[1] = 1;
    opts->orientation[2] = 2;
    opts->budget = 0;
    opts->seed = 0;
    opts->tol = 1e-8;
    opts->integer_nodes = 0;
}

hrr_status hrr_decompose(hrr_tensor t, const hrr_decompose_options* opts, hrr_decompose_report* report,
                         hrr_decomposition* out) {
    if (out) *out = nullptr;
    return guarded([&] {
        HRR_REQUIRE(t && report);
        hrr_decompose_options o;
        hrr_decompose_options_init(&o);
        if (opts) o = *opts;
        if (!(o.tol > 0.0)) return fail(HRR_ERR_ARGUMENT, "tolerance must be positive");

        hrr::DriveOptions d;
        switch (o.mode) {
            case HRR_MODE_AUTO: d.mode = hrr::Mode::Auto; break;
            case HRR_MODE_TALL: d.mode = hrr::Mode::Tall; break;
            case HRR_MODE_GENERIC: d.mode = hrr::Mode::Generic; break;
            default: return fail(HRR_ERR_ARGUMENT, "unknown mode");
        }
        if (!o.orientation_auto) d.orientation = to_perm(o.orientation);
        d.generic.budget = o.budget;
        d.generic.seed = o.seed;
        d.generic.tol_rec = o.tol;
        d.tall.tol_rec = o.tol;
        if (o.integer_nodes) d.tall.nodes = hrr::NodeChoice::Integers;

        hrr::DriveResult r = hrr::decompose_tensor(t->t, d);
        report->outcome = to_c(r.outcome);
        report->mode_used = to_c(r.mode_used);
        for (int i = 0; i < 3; ++i) report->orientation[i] = r.orientation[i];
        report->rank = r.decomposition ? r.decomposition->rank() : 0;
        report->residual = r.residual;
        report->verdict = r.classification ? to_c(r.classification->verdict) : HRR_VERDICT_NONE;
        report->directions_tried = r.classification ? r.classification->directions_tried : 0;
        report->points_found = r.classification ? r.classification->points.size() : 0;

        switch (r.outcome) {
            case hrr::Outcome::RankP:
                if (out) *out = new hrr_decomposition_s{std::move(*r.decomposition)};
                return HRR_OK;
            case hrr::Outcome::NotGeneric:
                return fail(HRR_ERR_NOT_GENERIC, r.message.c_str());
            default:
                return fail(HRR_ERR_NO_DECOMPOSITION, r.message.c_str());
        }
    });
}

hrr_status hrr_classify(hrr_tensor t, size_t directions, uint64_t seed, hrr_classify_report* report,
                        double* witness, size_t witness_capacity) {
    return guarded([&] {
        HRR_REQUIRE(t && report);
        const hrr::ClassifyResult r = hrr::classify_tensor(t->t, directions, seed);
        const hrr::Classification& c = r.classification;
        report->verdict = to_c(c.verdict);
        report->input_was_contraction = r.input_was_contraction ? 1 : 0;
        report->directions_tried = c.directions_tried;
        report->points_found = c.points.size();
        report->witness_det = c.witness_det;
        report->witness_length = c.witness.size();
        if (witness) {
            const std::size_t count = std::min(witness_capacity, c.witness.size());
            std::memcpy(witness, c.witness.data(), count * sizeof(double));
        }
        return HRR_OK;
    });
}

hrr_status hrr_census_run(size_t m, size_t n, size_t trials, uint64_t seed, size_t threads, hrr_census* out) {
    return guarded([&] {
        HRR_REQUIRE(out);
        *out = nullptr;
        auto* c = new hrr_census_s{hrr::run_census(m, n, trials, seed, threads), {}};
        c->json = c->report.to_json();
        *out = c;
        return HRR_OK;
    });
}

hrr_status hrr_census_count(hrr_census c, hrr_outcome outcome, size_t* out) {
    return guarded([&] {
        HRR_REQUIRE(c && out);
        hrr::Outcome o;
        if (!from_c(outcome, o)) return fail(HRR_ERR_ARGUMENT, "unknown outcome");
        *out = c->report.count(o);
        return HRR_OK;
    });
}

hrr_status hrr_census_fraction(hrr_census c, hrr_outcome outcome, double* out) {
    return guarded([&] {
        HRR_REQUIRE(c && out);
        hrr::Outcome o;
        if (!from_c(outcome, o)) return fail(HRR_ERR_ARGUMENT, "unknown outcome");
        *out = c->report.fraction(o);
        return HRR_OK;
    });
}

hrr_status hrr_census_max_residual(hrr_census c, double* out) {
    return guarded([&] {
        HRR_REQUIRE(c && out);
        *out = c->report.max_residual();
        return HRR_OK;
    });
}

hrr_status hrr_census_json(hrr_census c, const char** json, size_t* length) {
    return guarded([&] {
        HRR_REQUIRE(c && json);
        *json = c->json.c_str();
        if (length) *length = c->json.size();
        return HRR_OK;
    });
}

hrr_status hrr_census_save(hrr_census c, const char* path) {
    return guarded([&] {
        HRR_REQUIRE(c && path);
        hrr::write_text_file(path, c->json);
        return HRR_OK;
    });
}

void hrr_census_destroy(hrr_census c) { delete c; }

}  // extern "C"
