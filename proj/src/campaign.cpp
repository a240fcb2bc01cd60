#include "blowup/campaign.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "blowup/orbit.hpp"
#include "rng.hpp"

namespace blowup {

namespace {

enum class Stream : std::uint64_t { form = 1, orbit = 2, partner = 3, image_orbit = 4, screen_p = 5, screen_q = 6 };

std::uint64_t stream_seed(std::uint64_t seed, Stream s, std::size_t t) {
    return detail::mix_seed({seed, static_cast<std::uint64_t>(s), static_cast<std::uint64_t>(t)});
}

json window_json(const Verdict& v) {
    return std::visit(
        [](const auto& alt) -> json {
            using T = std::decay_t<decltype(alt)>;
            if constexpr (std::is_same_v<T, CertifiedIso>)
                return {{"U", alt.certificate.U}, {"Z", alt.certificate.Z}};
            else if constexpr (std::is_same_v<T, CertifiedNonIso>)
                return {{"U", alt.U}, {"Mz", alt.Mz}};
            else
                return {{"U", alt.U}, {"Z", alt.Z}};
        },
        v.value());
}

bool closed_equations_hold(const CanonicalForm& cf) {
    for (const auto& w : window(cf.level()))
        if ((w.i == 1 || w.i == 2) && !cf.coeff(w).is_zero())
            return false;
    return true;
}

struct CorpusEntry {
    CanonicalForm p;
    CanonicalForm pprime;
    TruncationParams params;
    VerdictKind kind;
};

class Runner {
public:
    explicit Runner(const CampaignConfig& config)
        : base_(config.base_params()), image_(base_.deepened()) {
        report_.config = config;
    }

    CampaignReport run() {
        std::set<Suite> selected(report_.config.suites.begin(), report_.config.suites.end());
        const bool need_corpus = selected.count(Suite::stabilization) || selected.count(Suite::monotonicity);
        for (Suite s : all_suites()) {
            const bool chosen = selected.count(s) > 0;
            if (!chosen && !(need_corpus && (s == Suite::welldef || s == Suite::injective)))
                continue;
            SuiteResult r;
            r.suite = s;
            switch (s) {
                case Suite::welldef:
                    welldef(r);
                    break;
                case Suite::injective:
                    injective(r);
                    break;
                case Suite::saturation:
                    saturation(r);
                    break;
                case Suite::closedness:
                    closedness(r);
                    break;
                case Suite::stabilization:
                    stabilization(r);
                    break;
                case Suite::monotonicity:
                    monotonicity(r);
                    break;
            }
            if (chosen)
                report_.suites.push_back(std::move(r));
        }
        return std::move(report_);
    }

private:
    const CampaignConfig& cfg() const { return report_.config; }
    int j() const { return cfg().j; }

    CanonicalForm base_form(std::size_t t) const {
        return random_form(j(), stream_seed(cfg().seed, Stream::form, t), cfg().bound);
    }

    std::size_t store(Certificate cert) {
        report_.certificates.push_back(std::move(cert));
        return report_.certificates.size() - 1;
    }

    Verdict decide(Suite suite, std::size_t index, const std::string& role, const CanonicalForm& p,
                   const CanonicalForm& pprime, const TruncationParams& params, bool passed_if_iso,
                   bool passed_if_non_iso) {
        auto start = std::chrono::steady_clock::now();
        Verdict v = decide_iso(p, pprime, params, {0, 0, cfg().seed});
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        DecisionRecord rec{to_string(suite), index, role, p.level(), v.kind(), window_json(v), std::nullopt, false, secs};
        if (v.is_iso())
            rec.certificate_id = store(v.certificate());
        rec.passed = (v.is_iso() && passed_if_iso) || (v.is_non_iso() && passed_if_non_iso);
        report_.decisions.push_back(std::move(rec));
        return v;
    }

    void record_certificate(Suite suite, std::size_t index, const std::string& role, const Certificate& cert,
                            bool valid) {
        DecisionRecord rec{to_string(suite), index, role, cert.level(), VerdictKind::CertifiedIso,
                           json{{"U", cert.U}, {"Z", cert.Z}}, store(cert), valid, 0.0};
        report_.decisions.push_back(std::move(rec));
    }

    void tally(SuiteResult& r, bool ok, const std::string& what) {
        if (ok) {
            ++r.passed;
        } else {
            ++r.failed;
            r.notes.push_back("failed: " + what);
        }
    }

    void welldef(SuiteResult& r) {
        for (std::size_t t = 0; t < static_cast<std::size_t>(cfg().pairs); ++t) {
            const CanonicalForm p = base_form(t);
            OrbitSample o = orbit_sample(p, stream_seed(cfg().seed, Stream::orbit, t), base_);
            const bool orbit_ok = verify_certificate(o.certificate);
            record_certificate(r.suite, t, "orbit", o.certificate, orbit_ok);

            Verdict base = decide(r.suite, t, "base", p, o.pprime, base_, true, false);
            bool transported_ok = true;
            if (auto up = transport_witness_up(o.certificate)) {
                transported_ok = verify_certificate(*up);
                record_certificate(r.suite, t, "transported", *up, transported_ok);
            }
            const CanonicalForm ip = phi(p), iq = phi(o.pprime);
            Verdict img = decide(r.suite, t, "image", ip, iq, image_, true, false);
            corpus_.push_back({p, o.pprime, base_, base.kind()});
            corpus_.push_back({ip, iq, image_, img.kind()});
            orbit_forms_.push_back(o.pprime);
            tally(r, orbit_ok && transported_ok && base.is_iso() && img.is_iso(), "pair " + std::to_string(t));
        }
    }

    void injective(SuiteResult& r) {
        const std::size_t wanted = static_cast<std::size_t>(cfg().pairs);
        const std::size_t budget = 4 * wanted;
        std::size_t found = 0;
        for (std::size_t t = 0; t < budget && found < wanted; ++t) {
            const CanonicalForm p = random_form(j(), stream_seed(cfg().seed, Stream::screen_p, t), cfg().bound);
            const CanonicalForm q = random_form(j(), stream_seed(cfg().seed, Stream::screen_q, t), cfg().bound);
            Verdict base = decide(r.suite, t, "screen", p, q, base_, true, true);
            corpus_.push_back({p, q, base_, base.kind()});
            if (!base.is_non_iso())
                continue;
            ++found;
            const CanonicalForm ip = phi(p), iq = phi(q);
            Verdict img = decide(r.suite, t, "image", ip, iq, image_, false, true);
            corpus_.push_back({ip, iq, image_, img.kind()});
            tally(r, img.is_non_iso(), "pair " + std::to_string(t));
        }
        r.notes.push_back("non-isomorphic base pairs: " + std::to_string(found) + " of " + std::to_string(wanted) +
                          " requested");
    }

    void saturation(SuiteResult& r) {
        std::size_t representatives = 0;
        for (std::size_t t = 0; t < static_cast<std::size_t>(cfg().pairs); ++t) {
            const CanonicalForm img = phi(base_form(t));
            OrbitSample s = orbit_sample(img, stream_seed(cfg().seed, Stream::image_orbit, t), image_);
            const bool cert_ok = verify_certificate(s.certificate);
            record_certificate(r.suite, t, "image-orbit", s.certificate, cert_ok);
            const bool split = splits_at_level(s.pprime, 2, image_);
            bool roundtrip = true;
            if (auto rep = phi_inverse(s.pprime)) {
                ++representatives;
                roundtrip = phi(*rep) == s.pprime;
            }
            tally(r, cert_ok && split && roundtrip, "image orbit " + std::to_string(t));
        }
        r.notes.push_back("image representatives recovered: " + std::to_string(representatives));
    }

    void closedness(SuiteResult& r) {
        for (std::size_t t = 0; t < static_cast<std::size_t>(cfg().pairs); ++t) {
            std::vector<CanonicalForm> sources{base_form(t),
                                               random_form(j(), stream_seed(cfg().seed, Stream::partner, t), cfg().bound)};
            if (t < orbit_forms_.size())
                sources.push_back(orbit_forms_[t]);
            for (const auto& src : sources) {
                const CanonicalForm img = phi(src);
                tally(r, closed_equations_hold(img) && in_image(img), "image of form " + std::to_string(t));
            }
        }
    }

    void stabilization(SuiteResult& r) {
        for (std::size_t k = 0; k < corpus_.size(); ++k) {
            const CorpusEntry& e = corpus_[k];
            Verdict v = decide(r.suite, k, "deepened", e.p, e.pprime, e.params.deepened(), true, true);
            const bool same = v.kind() == e.kind;
            report_.decisions.back().passed = same;
            tally(r, same, "corpus entry " + std::to_string(k) + " changed from " + to_string(e.kind) + " to " +
                               to_string(v.kind()));
        }
    }

    void monotonicity(SuiteResult& r) {
        for (std::size_t k = 0; k < corpus_.size(); ++k) {
            const CorpusEntry& e = corpus_[k];
            if (e.kind != VerdictKind::CertifiedNonIso)
                continue;
            TruncationParams bigger = e.params;
            bool persists = true;
            for (int step = 0; step < 2; ++step) {
                bigger = bigger.deepened();
                persists = decide(r.suite, k, "enlarged", e.p, e.pprime, bigger, false, true).is_non_iso() && persists;
            }
            tally(r, persists, "corpus entry " + std::to_string(k));
        }
    }

    CampaignReport report_;
    TruncationParams base_;
    TruncationParams image_;
    std::vector<CorpusEntry> corpus_;
    std::vector<CanonicalForm> orbit_forms_;
};

json decision_json(const DecisionRecord& d) {
    return {{"suite", d.suite},
            {"index", d.index},
            {"role", d.role},
            {"j", d.j},
            {"verdict", to_string(d.kind)},
            {"window", d.window},
            {"certificate_id", d.certificate_id ? json(*d.certificate_id) : json(nullptr)},
            {"passed", d.passed}};
}

std::vector<json> read_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    std::vector<json> out;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty())
            out.push_back(json::parse(line));
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out)
        throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

std::string to_string(Suite s) {
    switch (s) {
        case Suite::welldef:
            return "welldef";
        case Suite::injective:
            return "injective";
        case Suite::saturation:
            return "saturation";
        case Suite::closedness:
            return "closedness";
        case Suite::stabilization:
            return "stabilization";
        case Suite::monotonicity:
            return "monotonicity";
    }
    return "?";
}

Suite suite_from_string(const std::string& name) {
    for (Suite s : all_suites())
        if (to_string(s) == name)
            return s;
    throw std::invalid_argument("unknown suite: " + name);
}

std::vector<Suite> all_suites() {
    return {Suite::welldef,    Suite::injective,     Suite::saturation,
            Suite::closedness, Suite::stabilization, Suite::monotonicity};
}

void CampaignConfig::validate() const {
    if (j < 1)
        throw std::invalid_argument("campaign: j must be >= 1");
    if (pairs < 1)
        throw std::invalid_argument("campaign: pairs must be >= 1");
    if (suites.empty())
        throw std::invalid_argument("campaign: no suites selected");
    if (bound < 1)
        throw std::invalid_argument("campaign: bound must be >= 1");
}

TruncationParams CampaignConfig::base_params() const {
    return params.value_or(TruncationParams::defaults(j)).normalized(j);
}

bool CampaignReport::all_passed() const {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.ok(); });
}

std::map<std::string, std::size_t> CampaignReport::verdict_histogram() const {
    std::map<std::string, std::size_t> h{{"CertifiedIso", 0}, {"CertifiedNonIso", 0}, {"Undecided", 0}};
    for (const auto& d : decisions)
        ++h[to_string(d.kind)];
    return h;
}

json CampaignReport::summary() const {
    const TruncationParams p = config.base_params();
    json suites_json = json::array();
    for (const auto& s : suites)
        suites_json.push_back({{"suite", to_string(s.suite)},
                               {"passed", s.passed},
                               {"failed", s.failed},
                               {"ok", s.ok()},
                               {"notes", s.notes}});
    std::set<std::string> windows;
    for (const auto& d : decisions)
        windows.insert(d.window.dump());
    json windows_json = json::array();
    for (const auto& w : windows)
        windows_json.push_back(json::parse(w));
    json names = json::array();
    for (Suite s : config.suites)
        names.push_back(to_string(s));
    return {{"config",
             {{"j", config.j},
              {"pairs", config.pairs},
              {"seed", config.seed},
              {"bound", config.bound},
              {"params", {{"U", p.U}, {"Z", p.Z}, {"cap", p.deepening_cap}}},
              {"suites", names}}},
            {"suites", suites_json},
            {"verdict_histogram", verdict_histogram()},
            {"decision_count", decisions.size()},
            {"certificate_count", certificates.size()},
            {"windows", windows_json},
            {"all_passed", all_passed()}};
}

CampaignReport run_campaign(const CampaignConfig& config) {
    config.validate();
    CampaignReport report = Runner(config).run();
    if (!config.out.empty())
        write_campaign(report, config.out);
    return report;
}

void write_campaign(const CampaignReport& report, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    write_text(dir / "report.json", report.summary().dump(2) + "\n");
    std::string decisions, certificates, timings;
    for (std::size_t k = 0; k < report.decisions.size(); ++k) {
        decisions += decision_json(report.decisions[k]).dump() + "\n";
        timings += json{{"row", k}, {"seconds", report.decisions[k].seconds}}.dump() + "\n";
    }
    for (std::size_t k = 0; k < report.certificates.size(); ++k) {
        json c = to_json(report.certificates[k]);
        c["id"] = k;
        certificates += c.dump() + "\n";
    }
    write_text(dir / "decisions.jsonl", decisions);
    write_text(dir / "certificates.jsonl", certificates);
    write_text(dir / "timings.jsonl", timings);
}

std::string render_report_csv(const std::filesystem::path& dir) {
    std::ostringstream os;
    os << "suite,index,role,j,verdict,U,Z,Mz,certificate_id,passed\n";
    for (const json& d : read_jsonl(dir / "decisions.jsonl")) {
        const json& w = d.at("window");
        auto field = [&](const char* key) { return w.contains(key) ? std::to_string(w.at(key).get<int>()) : ""; };
        os << d.at("suite").get<std::string>() << ',' << d.at("index").get<std::size_t>() << ','
           << d.at("role").get<std::string>() << ',' << d.at("j").get<int>() << ','
           << d.at("verdict").get<std::string>() << ',' << field("U") << ',' << field("Z") << ',' << field("Mz")
           << ',' << (d.at("certificate_id").is_null() ? "" : std::to_string(d.at("certificate_id").get<std::size_t>()))
           << ',' << (d.at("passed").get<bool>() ? "true" : "false") << '\n';
    }
    return os.str();
}

std::size_t reverify_campaign(const std::filesystem::path& dir) {
    std::vector<Certificate> certs;
    for (const json& c : read_jsonl(dir / "certificates.jsonl"))
        certs.push_back(certificate_from_json(c));
    std::size_t failures = 0;
    for (const json& d : read_jsonl(dir / "decisions.jsonl")) {
        if (d.at("verdict").get<std::string>() != "CertifiedIso")
            continue;
        const json& id = d.at("certificate_id");
        if (id.is_null() || id.get<std::size_t>() >= certs.size() || !verify_certificate(certs[id.get<std::size_t>()]))
            ++failures;
    }
    return failures;
}

}  // namespace blowup
