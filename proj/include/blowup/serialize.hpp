#pragma once

#include <json.hpp>

#include "blowup/canonical_form.hpp"
#include "blowup/iso_engine.hpp"

namespace blowup {

using json = nlohmann::json;

/// [{"u": int, "z": int, "re": "num/den", "im": "num/den"}, ...], sorted by
/// (u, z) on output; any order accepted on input, repeated monomials add.
json to_json(const BiLaurent& f);
BiLaurent bilaurent_from_json(const json& j);

/// {"j": int, "coeffs": [...]}; loading rejects terms outside the window.
json to_json(const CanonicalForm& cf);
CanonicalForm form_from_json(const json& j);

/// {"j", "p", "pprime", "G": {"a", "b", "c", "d"}, "params": {"U", "Z"}, "seed"}.
json to_json(const Certificate& cert);
Certificate certificate_from_json(const json& j);

/// {"verdict": "CertifiedIso", "certificate": {...}} |
/// {"verdict": "CertifiedNonIso", "U", "Mz"} | {"verdict": "Undecided", "U", "Z"}.
json to_json(const Verdict& v);
Verdict verdict_from_json(const json& j);

}  // namespace blowup
