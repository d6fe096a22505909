#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "spiegel/class_group.hpp"
#include "spiegel/delta_module.hpp"
#include "spiegel/differentials.hpp"
#include "spiegel/units.hpp"

namespace spiegel {

struct RunConfig {
    unsigned q = 2;
    std::string p_poly;
    unsigned norm_bound = 0;                 // 0: chosen from the tower
    std::uint64_t witness_bound = 400000;    // cap on relation-search candidates
    std::uint64_t seed = 1;
    unsigned probes = 100;
    unsigned cartier_samples = 20;
    /// stage names as they start; never part of the report
    std::function<void(const std::string&)> progress;
};

/// k-basis of the Cartier-fixed differentials as local series of the dlambda
/// coefficient; the first `num_units` entries are unit dlogs.
struct FixedDifferentialSpace {
    std::vector<Series> basis;
    std::size_t num_units = 0;
    unsigned separation = 0;  // local coefficients needed to tell elements apart
    std::size_t dim() const { return basis.size(); }
};

struct RemarkOutcome {
    unsigned character = 0;
    bool examined = false;  // false: operational Hom part nonzero, implication skipped
    unsigned hom_dim = 0;
    unsigned pic_dim = 0;
    bool ok = true;
};

struct SpiegelReport {
    unsigned q = 0, d = 0, n = 0;
    std::string p_poly;
    std::uint64_t seed = 0;
    /// eigenspace dimensions per character omega^j, j = 0..n-1
    std::map<std::string, std::vector<unsigned>> dims;
    std::map<std::string, bool> verdicts;
    bool remark_vacuous = false;
    std::vector<RemarkOutcome> remark;
    nlohmann::ordered_json oracles = nlohmann::ordered_json::object();
    /// deterministic work counters
    std::map<std::string, std::uint64_t> timings;
    std::string status = "PASS";
    std::string failure_kind, failure_message;
    std::optional<unsigned> failure_character;
    std::vector<std::string> notes;

    bool passed() const { return status == "PASS"; }
};

/// Full pipeline for one prime. Invalid input (unsupported q, reducible or
/// degenerate P) throws SpiegelError before any computation; every later
/// failure is recorded in the report with status "FAILED".
SpiegelReport run_spiegel(const RunConfig& cfg);

/// Exit code for a finished report: 0 pass, 1 falsified claim, 2 internal
/// oracle mismatch.
int exit_code(const SpiegelReport& r);
inline constexpr int kUsageExit = 64;

// ---- stages, exposed for tests

/// Cartier-fixed basis from unit dlogs and class witnesses; throws
/// DimensionMismatch on a linear dependency.
FixedDifferentialSpace build_fixed_space(const DifferentialOps& ops, const UnitSet& U, const std::vector<Series>& witness_dlogs);

/// Matrix of delta_0 on A/P (x) Omega^{c=1} in the basis of `V`.
DeltaModule fixed_space_module(const DifferentialOps& ops, const FixedDifferentialSpace& V);

/// theta(a (x) omega) = tau(a) * (omega mod q^{q^d}), columns per basis element.
FqMatrix theta_matrix(const Tower& tw, const FixedDifferentialSpace& V);

struct AlphaData {
    std::vector<FqVec> ker_theta, ker_alpha;
    std::vector<unsigned> units, pic, hom, kern, coker;
};
AlphaData alpha_data(const DeltaModule& V, std::size_t num_units, const FqMatrix& theta);

struct ProbeResult {
    unsigned probes = 0;
    unsigned fixed_found = 0;  // fixed vectors met (inside the constructed space)
    unsigned hits = 0;         // fixed vectors outside the constructed space
    std::uint64_t cartier_steps = 0;
};
ProbeResult probe_completeness(const DifferentialOps& ops, const FixedDifferentialSpace& V, unsigned probes,
                               std::uint64_t seed);

}  // namespace spiegel
