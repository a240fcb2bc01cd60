// blowup: command-line front end for canonical bundle forms.
//
//   blowup gen      --j 2 --seed 1 --count 5            random forms (JSONL)
//   blowup iso      --in pairs.jsonl                    decide isomorphism
//   blowup phi      --in forms.jsonl [--inverse]        apply / invert the embedding
//   blowup verify   --in certs.jsonl                    re-check certificates
//   blowup orbit    --in forms.jsonl --count 3          sample equivalent forms
//   blowup campaign --j 2 --pairs 50 --out runs/j2      property suites
//   blowup report   --in runs/j2 [--out report.csv]     CSV rendering
//   blowup crosscheck --in pairs.jsonl                  float oracle agreement
//
// Every record is one JSON object per line. Inputs default to stdin and
// outputs to stdout.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "blowup/campaign.hpp"
#include "blowup/orbit.hpp"
#include "blowup/serialize.hpp"

namespace {

using namespace blowup;

struct WindowFlags {
    std::optional<int> U;
    std::optional<int> Z;
    std::optional<int> cap;

    void attach(CLI::App* app) {
        app->add_option("--U", U, "max u exponent of gauge unknowns (default 2j)");
        app->add_option("--Z", Z, "max z exponent of gauge unknowns (default 4j)");
        app->add_option("--cap", cap, "deepening rounds (default 2)");
    }

    TruncationParams for_level(int j) const {
        TruncationParams p = TruncationParams::defaults(j);
        if (U)
            p.U = *U;
        if (Z)
            p.Z = *Z;
        if (cap)
            p.deepening_cap = *cap;
        return p.normalized(j);
    }
};

std::vector<json> read_records(const std::string& path) {
    std::ifstream file;
    std::istream* in = &std::cin;
    if (!path.empty() && path != "-") {
        file.open(path);
        if (!file)
            throw std::runtime_error("cannot open " + path);
        in = &file;
    }
    std::vector<json> out;
    std::string line;
    while (std::getline(*in, line))
        if (line.find_first_not_of(" \t\r") != std::string::npos)
            out.push_back(json::parse(line));
    return out;
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_.open(path, std::ios::binary);
            if (!file_)
                throw std::runtime_error("cannot write " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
    void line(const json& j) { stream() << j.dump() << '\n'; }

private:
    std::ofstream file_;
};

// A pair is either {"p": form, "pprime": form} on one line or two
// consecutive form lines.
std::vector<std::pair<CanonicalForm, CanonicalForm>> read_pairs(const std::string& path) {
    std::vector<json> recs = read_records(path);
    std::vector<std::pair<CanonicalForm, CanonicalForm>> pairs;
    for (std::size_t k = 0; k < recs.size(); ++k) {
        if (recs[k].contains("p")) {
            pairs.emplace_back(form_from_json(recs[k].at("p")), form_from_json(recs[k].at("pprime")));
        } else {
            if (k + 1 >= recs.size())
                throw std::runtime_error("odd number of form records; cannot pair the last one");
            pairs.emplace_back(form_from_json(recs[k]), form_from_json(recs[k + 1]));
            ++k;
        }
    }
    return pairs;
}

std::vector<Suite> parse_suites(const std::vector<std::string>& names) {
    std::vector<Suite> out;
    for (const auto& n : names)
        out.push_back(suite_from_string(n));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Canonical forms of rank-2 bundles on the blown-up plane"};
    app.require_subcommand(1);

    std::string in_path, out_path;
    int j = 2;
    std::uint64_t seed = 0;
    int count = 1;
    int bound = 4;
    int pairs = 10;
    bool inverse = false;
    bool fail_on_undecided = false;
    std::vector<std::string> suites;
    WindowFlags window;

    auto* gen = app.add_subcommand("gen", "emit random canonical forms");
    gen->add_option("--j", j, "splitting level")->required();
    gen->add_option("--seed", seed, "base seed");
    gen->add_option("--count", count, "number of forms");
    gen->add_option("--bound", bound, "numerator/denominator bound");
    gen->add_option("--out", out_path, "output file");

    auto* iso = app.add_subcommand("iso", "decide isomorphism of form pairs");
    iso->add_option("--in", in_path, "pair records");
    iso->add_option("--out", out_path, "output file");
    iso->add_option("--seed", seed, "seed recorded in certificates");
    iso->add_flag("--fail-on-undecided", fail_on_undecided, "exit 2 if any pair stays undecided");
    window.attach(iso);

    auto* phi_cmd = app.add_subcommand("phi", "apply the embedding p -> z u^2 p");
    phi_cmd->add_option("--in", in_path, "form records");
    phi_cmd->add_option("--out", out_path, "output file");
    phi_cmd->add_flag("--inverse", inverse, "recover preimages instead");

    auto* verify = app.add_subcommand("verify", "check certificate records exactly");
    verify->add_option("--in", in_path, "certificate records");
    verify->add_option("--out", out_path, "output file");

    auto* orbit = app.add_subcommand("orbit", "sample forms equivalent to the inputs");
    orbit->add_option("--in", in_path, "form records");
    orbit->add_option("--out", out_path, "output file");
    orbit->add_option("--seed", seed, "base seed");
    orbit->add_option("--count", count, "samples per input form");
    window.attach(orbit);

    auto* campaign = app.add_subcommand("campaign", "run the embedding property suites");
    campaign->add_option("--j", j, "splitting level")->required();
    campaign->add_option("--pairs", pairs, "pairs per suite");
    campaign->add_option("--seed", seed, "base seed");
    campaign->add_option("--bound", bound, "numerator/denominator bound");
    campaign->add_option("--suites", suites, "comma-separated subset of suites")->delimiter(',');
    campaign->add_option("--out", out_path, "artifact directory");
    window.attach(campaign);

    auto* report = app.add_subcommand("report", "render a campaign directory as CSV");
    report->add_option("--in", in_path, "campaign directory")->required();
    report->add_option("--out", out_path, "CSV file");

    auto* crosscheck = app.add_subcommand("crosscheck", "compare the exact engine with a float oracle");
    crosscheck->add_option("--in", in_path, "pair records");
    crosscheck->add_option("--out", out_path, "output file");
    window.attach(crosscheck);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            Output out(out_path);
            for (int k = 0; k < count; ++k)
                out.line(to_json(random_form(j, seed + static_cast<std::uint64_t>(k), bound)));
            return 0;
        }
        if (*iso) {
            Output out(out_path);
            bool undecided = false;
            std::size_t index = 0;
            for (const auto& [p, q] : read_pairs(in_path)) {
                Verdict v = decide_iso(p, q, window.for_level(p.level()), {0, 0, seed});
                undecided = undecided || v.kind() == VerdictKind::Undecided;
                json rec = to_json(v);
                rec["index"] = index++;
                rec["j"] = p.level();
                out.line(rec);
            }
            return (fail_on_undecided && undecided) ? 2 : 0;
        }
        if (*phi_cmd) {
            Output out(out_path);
            int status = 0;
            for (const json& rec : read_records(in_path)) {
                CanonicalForm cf = form_from_json(rec);
                if (!inverse) {
                    out.line(to_json(phi(cf)));
                } else if (auto pre = phi_inverse(cf)) {
                    out.line(to_json(*pre));
                } else {
                    out.line({{"error", "not in set-image"}, {"form", rec}});
                    status = 1;
                }
            }
            return status;
        }
        if (*verify) {
            Output out(out_path);
            int status = 0;
            std::size_t index = 0;
            for (const json& rec : read_records(in_path)) {
                bool ok = false;
                std::string error;
                try {
                    ok = verify_certificate(certificate_from_json(rec));
                } catch (const std::exception& e) {
                    error = e.what();
                }
                json line{{"index", index++}, {"valid", ok}};
                if (!error.empty())
                    line["error"] = error;
                out.line(line);
                if (!ok)
                    status = 1;
            }
            return status;
        }
        if (*orbit) {
            Output out(out_path);
            std::size_t source = 0;
            for (const json& rec : read_records(in_path)) {
                CanonicalForm cf = form_from_json(rec);
                for (int k = 0; k < count; ++k) {
                    OrbitSample s = orbit_sample(cf, seed + static_cast<std::uint64_t>(k), window.for_level(cf.level()));
                    out.line({{"source", source}, {"pprime", to_json(s.pprime)}, {"certificate", to_json(s.certificate)}});
                }
                ++source;
            }
            return 0;
        }
        if (*campaign) {
            CampaignConfig cfg;
            cfg.j = j;
            cfg.pairs = pairs;
            cfg.seed = seed;
            cfg.bound = bound;
            cfg.params = window.for_level(j);
            if (!suites.empty())
                cfg.suites = parse_suites(suites);
            cfg.out = out_path;
            CampaignReport rep = run_campaign(cfg);
            std::cout << rep.summary().dump(2) << '\n';
            return rep.all_passed() ? 0 : 1;
        }
        if (*report) {
            Output out(out_path);
            out.stream() << render_report_csv(in_path);
            return 0;
        }
        if (*crosscheck) {
            Output out(out_path);
            int status = 0;
            std::size_t index = 0;
            for (const auto& [p, q] : read_pairs(in_path)) {
                FloatAgreement a = cross_check_float(p, q, window.for_level(p.level()));
                out.line({{"index", index++},
                          {"exact_nullity", a.exact_nullity},
                          {"float_nullity", a.float_nullity},
                          {"exact_vanishes", a.exact_vanishes},
                          {"probe_vanishes", a.probe_vanishes},
                          {"agrees", a.agrees()}});
                if (!a.agrees())
                    status = 1;
            }
            return status;
        }
    } catch (const std::exception& e) {
        std::cerr << "blowup: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
