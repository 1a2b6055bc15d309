#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "json.hpp"

#include "mconv/group.hpp"
#include "mconv/io.hpp"

namespace mconv {

struct PipelineConfig {
    int family = 1;
    unsigned m = 4;
    std::size_t r = 9;
    std::optional<std::uint64_t> q;
    std::vector<unsigned> eigenvalue_orders; // empty: lcm(4, m)
    std::optional<CertificateMode> mode;     // empty: SL for families 1-2, SL+- for 3-4
    bool involution_check = false;           // also run MC(MC(T)) ~ T at each convolution stage
};

/// Throws HypothesisViolation (or InvalidM) when the configuration is outside
/// the range where the family is defined.
void check_config(const PipelineConfig& c);

CertificateMode default_mode(int family);

/// Rank of family f at r.
std::size_t family_rank(int family, std::size_t r);

struct FamilyStage {
    std::string name;
    MonodromyTuple<CyclotomicField> tuple;
    bool is_convolution = false;
};

/// All intermediate tuples of the family construction, in order; the last is
/// the family tuple. Throws RankMismatch if the final rank is off.
std::vector<FamilyStage> build_family_stages(int family, unsigned m, std::size_t r);

MonodromyTuple<CyclotomicField> build_family(int family, unsigned m, std::size_t r);

/// Expected Jordan data of every entry (index 1 .. r+1) of the family tuple.
std::vector<JordanData<CyclotomicField>> instantiate_oracle(int family, unsigned m, std::size_t r);

template <ExactField F>
nlohmann::json jordan_to_json(const F& f, const JordanData<F>& j) {
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& b : j.blocks)
        blocks.push_back({{"eigenvalue", io::element_to_json(f, b.eigenvalue)},
                          {"size", b.size},
                          {"multiplicity", b.multiplicity}});
    return {{"dim", j.dim}, {"blocks", blocks}};
}

struct PipelineReport {
    nlohmann::json doc;
    bool oracle_match = false;
    std::optional<bool> verdict; // certificate verdict when q was given
    bool failed = false;         // a stage threw; doc["error"] has the details
};

PipelineReport run_pipeline(const PipelineConfig& config);

} // namespace mconv
