#include "levy/specdoc.hpp"

#include <json.hpp>

#include "levy/expression.hpp"

namespace levy {

using nlohmann::json;

SpecDocument parse_spec_document(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw SpecParseError(std::string("invalid JSON: ") + e.what(),
                             static_cast<long>(e.byte) - 1);
    }
    SpecDocument doc;
    if (!j.is_object()) throw SpecParseError("spec document must be a JSON object");
    doc.schema_version = j.value("schema_version", 1);
    if (doc.schema_version != 1)
        throw SpecParseError("unsupported schema_version " +
                             std::to_string(doc.schema_version));
    const bool has_catalog = j.contains("catalog");
    const bool has_triple = j.contains("triple");
    if (has_catalog == has_triple)
        throw SpecParseError("spec document needs exactly one of 'catalog' or 'triple'");
    if (has_catalog) {
        const auto& c = j.at("catalog");
        CatalogRef ref;
        if (!c.contains("name") || !c.at("name").is_string())
            throw SpecParseError("'catalog.name' must be a string");
        ref.name = c.at("name").get<std::string>();
        if (c.contains("params")) {
            for (const auto& [k, v] : c.at("params").items()) {
                if (!v.is_number())
                    throw SpecParseError("catalog parameter '" + k + "' must be a number");
                ref.params[k] = v.get<double>();
            }
        }
        doc.catalog = std::move(ref);
    } else {
        const auto& t = j.at("triple");
        InlineTriple in;
        in.shift = t.value("shift", 0.0);
        in.gaussian_var = t.value("gaussian_var", 0.0);
        in.pos_density = t.value("pos_density", std::string("0"));
        in.neg_density = t.value("neg_density", std::string("0"));
        if (t.contains("atoms")) {
            for (const auto& a : t.at("atoms")) {
                Atom atom;
                atom.location = a.at("location").get<double>();
                atom.mass = a.at("mass").get<double>();
                in.atoms.push_back(atom);
            }
        }
        doc.inline_triple = std::move(in);
    }
    return doc;
}

std::string to_json_text(const SpecDocument& doc) {
    json j;
    j["schema_version"] = doc.schema_version;
    if (doc.catalog) {
        j["catalog"]["name"] = doc.catalog->name;
        json p = json::object();
        for (const auto& [k, v] : doc.catalog->params) p[k] = v;
        j["catalog"]["params"] = p;
    }
    if (doc.inline_triple) {
        const auto& t = *doc.inline_triple;
        j["triple"]["shift"] = t.shift;
        j["triple"]["gaussian_var"] = t.gaussian_var;
        j["triple"]["pos_density"] = t.pos_density;
        j["triple"]["neg_density"] = t.neg_density;
        json atoms = json::array();
        for (const Atom& a : t.atoms) atoms.push_back({{"location", a.location}, {"mass", a.mass}});
        j["triple"]["atoms"] = atoms;
    }
    return j.dump(2);
}

SpecDocument spec_document_for(const DistributionSpec& spec) {
    SpecDocument doc;
    CatalogRef ref;
    ref.name = spec.name;
    ref.params = spec.params;
    doc.catalog = std::move(ref);
    return doc;
}

DistributionSpec resolve_spec(const SpecDocument& doc) {
    if (doc.catalog) return make_by_name(doc.catalog->name, doc.catalog->params);
    const InlineTriple& in = *doc.inline_triple;
    DistributionSpec spec;
    spec.name = "inline";
    spec.triple.shift = in.shift;
    spec.triple.gaussian_var = in.gaussian_var;
    auto build_tail = [](const std::string& text) {
        TailDensity td;
        if (text == "0" || text.empty()) return TailDensity::zero();
        try {
            td.density = compile_expression(text);
        } catch (const SpecParseError& e) {
            throw SpecParseError("bad density expression: " + std::string(e.what()) + "\n" +
                                 caret_diagnostic(text, e.position));
        }
        return td;
    };
    spec.triple.spectral.pos = build_tail(in.pos_density);
    spec.triple.spectral.neg = build_tail(in.neg_density);
    spec.triple.spectral.atoms = in.atoms;
    spec.triple.validate();
    spec.exponent = lk_exponent(spec.triple);
    spec.exponent.label = "inline";
    spec.smooth = false; // unknown smoothness for user densities
    spec.note = "inline triple";
    return spec;
}

} // namespace levy
