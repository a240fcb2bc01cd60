#include <doctest.h>

#include <fstream>
#include <sstream>

#include "blowup/campaign.hpp"
#include "helpers.hpp"

using namespace blowup;
using testing_support::mono;

namespace {

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::filesystem::path scratch_dir(const std::string& name) {
    std::filesystem::path dir = std::filesystem::temp_directory_path() / ("blowup_test_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

const SuiteResult& suite(const CampaignReport& r, Suite s) {
    for (const auto& x : r.suites)
        if (x.suite == s)
            return x;
    throw std::logic_error("suite missing");
}

}  // namespace

TEST_CASE("suite names") {
    for (Suite s : all_suites())
        CHECK(suite_from_string(to_string(s)) == s);
    CHECK_THROWS_AS(suite_from_string("nope"), std::invalid_argument);
}

TEST_CASE("config validation") {
    CampaignConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.j = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.j = 2;
    cfg.pairs = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.pairs = 3;
    cfg.suites.clear();
    CHECK_THROWS_AS(run_campaign(cfg), std::invalid_argument);

    CampaignConfig small;
    small.j = 3;
    small.params = TruncationParams{1, 1, 0};
    CHECK(small.base_params().U >= 4);
    CHECK(small.base_params().Z >= 7);
}

TEST_CASE("level 1 campaign passes every suite") {
    CampaignConfig cfg;
    cfg.j = 1;
    cfg.pairs = 5;
    CampaignReport r = run_campaign(cfg);
    CHECK(r.suites.size() == all_suites().size());
    CHECK(r.all_passed());
}

TEST_CASE("level 2 campaign artifacts") {
    CampaignConfig cfg;
    cfg.j = 2;
    cfg.pairs = 50;
    cfg.seed = 7;
    cfg.out = scratch_dir("j2");
    CampaignReport r = run_campaign(cfg);
    CHECK(r.all_passed());
    CHECK(suite(r, Suite::welldef).passed == 50);
    CHECK(suite(r, Suite::injective).passed == 50);

    std::size_t transported = 0;
    for (const auto& d : r.decisions)
        if (d.suite == "welldef" && d.role == "transported") {
            ++transported;
            REQUIRE(d.certificate_id);
            CHECK(verify_certificate(r.certificates.at(*d.certificate_id)));
            CHECK(r.certificates.at(*d.certificate_id).level() == 3);
        }
    CHECK(transported == 50);

    for (const char* f : {"report.json", "decisions.jsonl", "certificates.jsonl", "timings.jsonl"})
        CHECK(std::filesystem::exists(cfg.out / f));
    CHECK(reverify_campaign(cfg.out) == 0);

    std::string csv = render_report_csv(cfg.out);
    CHECK(csv.rfind("suite,index,role,j,verdict,U,Z,Mz,certificate_id,passed\n", 0) == 0);
    CHECK(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) == r.decisions.size() + 1);

    CampaignConfig again = cfg;
    again.out = scratch_dir("j2_again");
    run_campaign(again);
    for (const char* f : {"report.json", "decisions.jsonl", "certificates.jsonl"})
        CHECK(slurp(cfg.out / f) == slurp(again.out / f));
}

TEST_CASE("tampered certificates are caught on re-verification") {
    CampaignConfig cfg;
    cfg.j = 2;
    cfg.pairs = 3;
    cfg.suites = {Suite::welldef};
    cfg.out = scratch_dir("tamper");
    run_campaign(cfg);
    REQUIRE(reverify_campaign(cfg.out) == 0);

    std::istringstream in(slurp(cfg.out / "certificates.jsonl"));
    std::string line, rewritten;
    bool first = true;
    while (std::getline(in, line)) {
        json c = json::parse(line);
        if (first)
            c["G"]["d"] = json::array();
        first = false;
        rewritten += c.dump() + "\n";
    }
    std::ofstream(cfg.out / "certificates.jsonl", std::ios::binary) << rewritten;
    CHECK(reverify_campaign(cfg.out) >= 1);
}

TEST_CASE("suite selection") {
    CampaignConfig cfg;
    cfg.j = 2;
    cfg.pairs = 4;
    cfg.suites = {Suite::closedness, Suite::stabilization};
    CampaignReport r = run_campaign(cfg);
    REQUIRE(r.suites.size() == 2);
    CHECK(r.suites[0].suite == Suite::closedness);
    CHECK(r.suites[1].suite == Suite::stabilization);
    CHECK(r.all_passed());
    CHECK(suite(r, Suite::stabilization).passed > 0);
}

TEST_CASE("float cross-check agrees on examples") {
    CanonicalForm u(2, mono(1, 0));
    CanonicalForm zero = CanonicalForm::zero(2);
    FloatAgreement same = cross_check_float(u, u, TruncationParams::defaults(2));
    CHECK(same.agrees());
    CHECK_FALSE(same.exact_vanishes);

    FloatAgreement apart = cross_check_float(u, zero, TruncationParams::defaults(2));
    CHECK(apart.agrees());
    CHECK(apart.exact_vanishes);
    CHECK(apart.exact_nullity > 0);
}
