#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "blowup/iso_engine.hpp"
#include "blowup/serialize.hpp"

namespace blowup {

enum class Suite { welldef, injective, saturation, closedness, stabilization, monotonicity };

std::string to_string(Suite s);
/// Throws std::invalid_argument on an unknown name.
Suite suite_from_string(const std::string& name);
std::vector<Suite> all_suites();

struct CampaignConfig {
    int j = 2;
    int pairs = 10;
    std::uint64_t seed = 0;
    /// Level-j params; phi images use params.deepened(). Empty means defaults.
    std::optional<TruncationParams> params;
    std::vector<Suite> suites = all_suites();
    int bound = 4;
    /// Artifacts are written here when non-empty.
    std::filesystem::path out;

    /// Throws std::invalid_argument when the invariants are violated.
    void validate() const;
    TruncationParams base_params() const;
};

struct SuiteResult {
    Suite suite;
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::vector<std::string> notes;

    bool ok() const { return failed == 0; }
};

/// One decision made during a campaign. Iso verdicts point into the
/// certificate list so rows re-verify on their own.
struct DecisionRecord {
    std::string suite;
    std::size_t index = 0;
    std::string role;
    int j = 0;
    VerdictKind kind = VerdictKind::Undecided;
    json window;
    std::optional<std::size_t> certificate_id;
    bool passed = true;
    double seconds = 0.0;
};

struct CampaignReport {
    CampaignConfig config;
    std::vector<SuiteResult> suites;
    std::vector<DecisionRecord> decisions;
    std::vector<Certificate> certificates;

    bool all_passed() const;
    std::map<std::string, std::size_t> verdict_histogram() const;
    /// Deterministic summary; timings are deliberately absent.
    json summary() const;
};

CampaignReport run_campaign(const CampaignConfig& config);

/// Writes report.json, decisions.jsonl, certificates.jsonl and timings.jsonl.
void write_campaign(const CampaignReport& report, const std::filesystem::path& dir);

/// Renders decisions.jsonl from a campaign directory as CSV with columns
/// suite,index,role,j,verdict,U,Z,Mz,certificate_id,passed.
std::string render_report_csv(const std::filesystem::path& dir);

/// Re-verifies every certificate referenced by an Iso row of a campaign
/// directory. Returns the number of rows that failed.
std::size_t reverify_campaign(const std::filesystem::path& dir);

/// Floating-point cross-check of the necessity system. Advisory: exact
/// verdicts are never overridden.
struct FloatAgreement {
    std::size_t exact_nullity = 0;
    std::size_t float_nullity = 0;
    bool exact_vanishes = false;  // q == 0 on the exact nullspace
    bool probe_vanishes = false;  // every random probe gave |q| below tolerance

    bool nullity_agrees() const { return exact_nullity == float_nullity; }
    bool probe_agrees() const { return exact_vanishes == probe_vanishes; }
    bool agrees() const { return nullity_agrees() && probe_agrees(); }
};

FloatAgreement cross_check_float(const CanonicalForm& p, const CanonicalForm& pprime, const TruncationParams& params,
                                 double threshold = 1e-9, std::uint64_t seed = 0);

}  // namespace blowup
