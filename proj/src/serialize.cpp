#include "blowup/serialize.hpp"

#include <stdexcept>

namespace blowup {

json to_json(const BiLaurent& f) {
    json out = json::array();
    for (const auto& [m, c] : f.terms())
        out.push_back({{"u", m.uexp},
                       {"z", m.zexp},
                       {"re", GaussianRational::rational_string(c.re())},
                       {"im", GaussianRational::rational_string(c.im())}});
    return out;
}

BiLaurent bilaurent_from_json(const json& j) {
    if (!j.is_array())
        throw std::invalid_argument("term list must be a JSON array");
    BiLaurent f;
    for (const auto& t : j) {
        const int u = t.at("u").get<int>();
        if (u < 0)
            throw std::invalid_argument("negative u exponent in term list");
        f.add_term(u, t.at("z").get<int>(),
                   GaussianRational::parse(t.at("re").get<std::string>(), t.value("im", std::string("0"))));
    }
    return f;
}

json to_json(const CanonicalForm& cf) { return {{"j", cf.level()}, {"coeffs", to_json(cf.poly())}}; }

CanonicalForm form_from_json(const json& j) {
    return {j.at("j").get<int>(), bilaurent_from_json(j.at("coeffs"))};
}

json to_json(const Certificate& cert) {
    const GaugeCandidate& g = cert.gauge;
    return {{"j", cert.level()},
            {"p", to_json(cert.p.poly())},
            {"pprime", to_json(cert.pprime.poly())},
            {"G", {{"a", to_json(g.a)}, {"b", to_json(g.b)}, {"c", to_json(g.c)}, {"d", to_json(g.d)}}},
            {"params", {{"U", cert.U}, {"Z", cert.Z}}},
            {"seed", cert.seed}};
}

Certificate certificate_from_json(const json& j) {
    const int level = j.at("j").get<int>();
    const json& g = j.at("G");
    Certificate cert{CanonicalForm(level, bilaurent_from_json(j.at("p"))),
                     CanonicalForm(level, bilaurent_from_json(j.at("pprime"))),
                     GaugeCandidate{bilaurent_from_json(g.at("a")), bilaurent_from_json(g.at("b")),
                                    bilaurent_from_json(g.at("c")), bilaurent_from_json(g.at("d"))},
                     j.at("params").at("U").get<int>(),
                     j.at("params").at("Z").get<int>(),
                     j.value("seed", std::uint64_t{0})};
    return cert;
}

json to_json(const Verdict& v) {
    return std::visit(
        [](const auto& alt) -> json {
            using T = std::decay_t<decltype(alt)>;
            if constexpr (std::is_same_v<T, CertifiedIso>)
                return {{"verdict", "CertifiedIso"}, {"certificate", to_json(alt.certificate)}};
            else if constexpr (std::is_same_v<T, CertifiedNonIso>)
                return {{"verdict", "CertifiedNonIso"}, {"U", alt.U}, {"Mz", alt.Mz}};
            else
                return {{"verdict", "Undecided"}, {"U", alt.U}, {"Z", alt.Z}};
        },
        v.value());
}

Verdict verdict_from_json(const json& j) {
    const std::string kind = j.at("verdict").get<std::string>();
    if (kind == "CertifiedIso")
        return CertifiedIso{certificate_from_json(j.at("certificate"))};
    if (kind == "CertifiedNonIso")
        return CertifiedNonIso{j.at("U").get<int>(), j.at("Mz").get<int>()};
    if (kind == "Undecided")
        return Undecided{j.at("U").get<int>(), j.at("Z").get<int>()};
    throw std::invalid_argument("unknown verdict: " + kind);
}

}  // namespace blowup
