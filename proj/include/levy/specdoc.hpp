#pragma once

#include <map>
#include <optional>
#include <string>

#include "levy/catalog.hpp"

namespace levy {

/// Declarative distribution description: either a catalog reference or an
/// inline triple with expression densities over r.
struct CatalogRef {
    std::string name;
    std::map<std::string, double> params;
};

struct InlineTriple {
    double shift = 0.0;
    double gaussian_var = 0.0;
    std::string pos_density = "0";
    std::string neg_density = "0";
    std::vector<Atom> atoms;
};

struct SpecDocument {
    int schema_version = 1;
    std::optional<CatalogRef> catalog;
    std::optional<InlineTriple> inline_triple;
};

/// Parse the JSON document text; throws SpecParseError with diagnostics.
SpecDocument parse_spec_document(const std::string& json_text);

/// Canonical JSON serialization (round-trips through parse).
std::string to_json_text(const SpecDocument& doc);

/// Catalog specs serialize to their own reference document.
SpecDocument spec_document_for(const DistributionSpec& spec);

/// Build the concrete law: catalog references go through make_by_name,
/// inline triples compile their density expressions (exponent via the
/// Lévy-Khintchine quadrature). Validates the triple.
DistributionSpec resolve_spec(const SpecDocument& doc);

} // namespace levy
