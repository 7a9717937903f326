#include "hrrank/driver.hpp"

#include <array>

#include "hrrank/errors.hpp"

namespace hrr {

namespace {

constexpr std::array<ModePerm, 6> kPerms{{{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}}};

Shape3 permuted(const Shape3& s, const ModePerm& p) { return {s[p[0]], s[p[1]], s[p[2]]}; }

// Auto-detection additionally wants the third mode to be the smallest.
bool generic_shape(const Shape3& s, bool smallest_last = false) {
    const std::size_t n = s[0], p = s[1], m = s[2];
    return m >= 3 && n > 0 && p == (m - 1) * n && (!smallest_last || (m <= n && m <= p));
}

bool tall_shape(const Shape3& s) { return TallShape::valid(s[2], s[0], s[1]); }

}  // namespace

std::optional<ModePerm> find_generic_orientation(const Shape3& shape) {
    for (const ModePerm& p : kPerms)
        if (generic_shape(permuted(shape, p), true)) return p;
    return std::nullopt;
}

std::optional<ModePerm> find_tall_orientation(const Shape3& shape) {
    for (const ModePerm& p : kPerms)
        if (tall_shape(permuted(shape, p))) return p;
    return std::nullopt;
}

std::optional<ModePerm> parse_orientation(const std::string& text) {
    if (text == "auto") return std::nullopt;
    if (text.size() != 3) throw ArgumentError("orientation must be 'auto' or three digits such as 102");
    ModePerm p{};
    for (int i = 0; i < 3; ++i) p[i] = text[i] - '0';
    if (!is_valid_perm(p)) throw ArgumentError("orientation '" + text + "' is not a permutation of 012");
    return p;
}

std::string format_orientation(const ModePerm& perm) {
    return {static_cast<char>('0' + perm[0]), static_cast<char>('0' + perm[1]), static_cast<char>('0' + perm[2])};
}

DriveResult decompose_tensor(const Tensor3& t, const DriveOptions& opts) {
    DriveResult out;
    Mode mode = opts.mode;
    std::optional<ModePerm> perm = opts.orientation;
    if (perm) {
        if (!is_valid_perm(*perm)) throw ArgumentError("invalid orientation");
        if (mode == Mode::Auto) {
            const Shape3 s = permuted(t.shape(), *perm);
            if (generic_shape(s)) {
                mode = Mode::Generic;
            } else if (tall_shape(s)) {
                mode = Mode::Tall;
            } else {
                throw DimensionError("orientation does not produce a supported shape");
            }
        }
    } else {
        if (mode != Mode::Tall) {
            perm = find_generic_orientation(t.shape());
            if (perm) mode = Mode::Generic;
        }
        if (!perm && mode != Mode::Generic) {
            perm = find_tall_orientation(t.shape());
            if (perm) mode = Mode::Tall;
        }
        if (!perm) {
            throw DimensionError(mode == Mode::Auto ? "no mode order gives an n x (m-1)n x m or tall n x u x m shape"
                                                    : "no mode order gives a shape supported by the requested mode");
        }
    }
    out.mode_used = mode;
    out.orientation = *perm;
    const Tensor3 oriented = permute_modes(t, *perm);
    const ModePerm back = inverse_perm(*perm);

    if (mode == Mode::Tall) {
        try {
            const Decomposition d = tall_decompose(oriented, opts.tall);
            out.decomposition = permute_modes(d, back);
        } catch (const NotGenericError& e) {
            out.outcome = Outcome::NotGeneric;
            out.message = e.what();
            return out;
        }
    } else {
        GenericResult r = decompose_generic(oriented, opts.generic);
        out.outcome = outcome_of(r);
        if (auto* ok = std::get_if<RankP>(&r)) {
            out.decomposition = permute_modes(ok->decomposition, back);
        } else if (auto* over = std::get_if<RankExceedsP>(&r)) {
            out.classification = std::move(over->classification);
            out.message = "rank >= p+1 (probabilistic evidence: no real hypersurface point found)";
            return out;
        } else if (auto* def = std::get_if<RankDeficient>(&r)) {
            out.classification = std::move(def->classification);
            out.message = def->reason;
            return out;
        } else {
            out.message = std::get<NotGeneric>(r).reason;
            return out;
        }
    }
    out.outcome = Outcome::RankP;
    out.residual = relative_residual(t, *out.decomposition);
    return out;
}

ClassifyResult classify_tensor(const Tensor3& t, std::size_t directions, std::uint64_t seed) {
    ClassifyResult out;
    if (t.d1() == t.d2() && t.d3() >= 2) {
        std::vector<Mat> ys;
        for (std::size_t k = 0; k < t.d3(); ++k) ys.push_back(t.slice(k));
        out.input_was_contraction = true;
        out.classification = classify(ContractionY(std::move(ys)), directions, seed);
        return out;
    }
    const auto perm = find_generic_orientation(t.shape());
    if (!perm) throw DimensionError("classify: input is neither n x n x l nor orientable to n x (m-1)n x m");
    out.orientation = *perm;
    out.classification = classify(contract(permute_modes(t, *perm)), directions, seed);
    return out;
}

}  // namespace hrr
