// Cleaning taxonomies: antibiotic UTI-relevance categories, urine-culture
// category handling, the binary susceptibility merge, bacteria
// UTI-association levels, and treatment-duration inference from defined
// daily doses. All lookups are total: unmapped keys fall back to an
// explicit default and are counted so runs can report them.
#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>

#include "utirisk/events.hpp"

namespace utirisk {

// Ordered: none < rarely < sometimes < regularly.
enum class AntibioticCategory { none = 0, rarely = 1, sometimes = 2, regularly = 3 };

// Ordered: none < no-growth-or-rarely < sometimes < regularly.
enum class BacteriaAssociation { none = 0, no_growth_or_rarely = 1, sometimes = 2, regularly = 3 };

enum class BinarySusceptibility { susceptible, resistant };

inline const char* to_string(AntibioticCategory c) {
    switch (c) {
        case AntibioticCategory::none: return "none";
        case AntibioticCategory::rarely: return "rarely";
        case AntibioticCategory::sometimes: return "sometimes";
        case AntibioticCategory::regularly: return "regularly";
    }
    return "?";
}

inline std::optional<AntibioticCategory> antibiotic_category_from(std::string_view s) {
    if (s == "none") return AntibioticCategory::none;
    if (s == "rarely") return AntibioticCategory::rarely;
    if (s == "sometimes") return AntibioticCategory::sometimes;
    if (s == "regularly") return AntibioticCategory::regularly;
    return std::nullopt;
}

inline const char* to_string(BacteriaAssociation a) {
    switch (a) {
        case BacteriaAssociation::none: return "none";
        case BacteriaAssociation::no_growth_or_rarely: return "no-growth-or-rarely";
        case BacteriaAssociation::sometimes: return "sometimes";
        case BacteriaAssociation::regularly: return "regularly";
    }
    return "?";
}

inline std::optional<BacteriaAssociation> bacteria_association_from(std::string_view s) {
    if (s == "none") return BacteriaAssociation::none;
    if (s == "no-growth-or-rarely") return BacteriaAssociation::no_growth_or_rarely;
    if (s == "sometimes") return BacteriaAssociation::sometimes;
    if (s == "regularly") return BacteriaAssociation::regularly;
    return std::nullopt;
}

inline const char* to_string(BinarySusceptibility s) {
    return s == BinarySusceptibility::susceptible ? "susceptible" : "resistant";
}

// Case-fold and trim; the only name normalization applied to keys.
inline std::string normalize_token(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    std::string out(s.substr(b, e - b));
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

// Unmapped keys seen during classification, keyed by normalized name.
struct UnmappedReport {
    std::map<std::string, int> antibiotics;
    std::map<std::string, int> organisms;
    std::map<std::string, int> drugs_without_ddd;
    std::map<std::string, int> specimen_sources;

    size_t total() const {
        size_t n = 0;
        for (const auto* m : {&antibiotics, &organisms, &drugs_without_ddd, &specimen_sources})
            for (const auto& [k, c] : *m) n += static_cast<size_t>(c);
        return n;
    }
};

struct MappingTables {
    std::unordered_map<std::string, AntibioticCategory> antibiotic_category;
    std::unordered_map<std::string, BacteriaAssociation> organism_association;
    std::unordered_map<std::string, double> ddd_mg_per_day;
    std::unordered_map<std::string, SpecimenSource> specimen_source;

    // Association assigned to mixed-growth results (not pinned by the
    // framework text; configurable).
    BacteriaAssociation mixed_growth_level = BacteriaAssociation::no_growth_or_rarely;
    int fallback_duration_days = 7;
};

inline AntibioticCategory classify_antibiotic(std::string_view drug_name,
                                              const MappingTables& tables,
                                              UnmappedReport* report = nullptr) {
    std::string key = normalize_token(drug_name);
    auto it = tables.antibiotic_category.find(key);
    if (it != tables.antibiotic_category.end()) return it->second;
    if (report && !key.empty()) report->antibiotics[key]++;
    return AntibioticCategory::none;
}

inline BinarySusceptibility merge_susceptibility(Susceptibility raw) {
    // Intermediate results group under resistant.
    return raw == Susceptibility::susceptible ? BinarySusceptibility::susceptible
                                              : BinarySusceptibility::resistant;
}

inline BacteriaAssociation organism_level(std::string_view organism, const MappingTables& tables,
                                          UnmappedReport* report = nullptr) {
    std::string key = normalize_token(organism);
    if (key.empty()) return BacteriaAssociation::none;
    auto it = tables.organism_association.find(key);
    if (it != tables.organism_association.end()) return it->second;
    if (report) report->organisms[key]++;
    return BacteriaAssociation::none;
}

// Association level of a urine culture record. A collected specimen is
// itself weak evidence, so every category except refer-to-ast yields at
// least level 1; refer-to-ast rows carry no level of their own (the
// linked AST rows do).
inline BacteriaAssociation classify_culture(const UrineCultureEvent& ev,
                                            const MappingTables& tables,
                                            UnmappedReport* report = nullptr) {
    BacteriaAssociation base;
    switch (ev.result) {
        case CultureResult::no_growth:
        case CultureResult::no_significant_growth:
        case CultureResult::invalid:
        case CultureResult::other_non_ast:
            base = BacteriaAssociation::no_growth_or_rarely;
            break;
        case CultureResult::mixed_growth:
            base = tables.mixed_growth_level;
            break;
        case CultureResult::refer_to_ast:
            base = BacteriaAssociation::none;
            break;
        default:
            base = BacteriaAssociation::none;
    }
    BacteriaAssociation org = organism_level(ev.organism, tables, report);
    return std::max(base, org);
}

// Association level of an AST row: cultured growth means at least level 1,
// raised by the organism's mapped association.
inline BacteriaAssociation classify_ast(const AstResultEvent& ev, const MappingTables& tables,
                                        UnmappedReport* report = nullptr) {
    return std::max(BacteriaAssociation::no_growth_or_rarely,
                    organism_level(ev.organism, tables, report));
}

// Treatment duration in days from dispensed quantity, unit dose and the
// drug's defined daily dose. Drugs without a DDD entry use the configured
// fallback; non-positive results clamp to one day.
inline int infer_duration_days(const DispensationEvent& ev, const MappingTables& tables,
                               UnmappedReport* report = nullptr) {
    std::string key = normalize_token(ev.drug_name);
    auto it = tables.ddd_mg_per_day.find(key);
    if (it == tables.ddd_mg_per_day.end() || it->second <= 0.0) {
        if (report && !key.empty()) report->drugs_without_ddd[key]++;
        return std::max(1, tables.fallback_duration_days);
    }
    double total_mg = static_cast<double>(ev.quantity) * ev.dosage_mg;
    int days = static_cast<int>(std::ceil(total_mg / it->second));
    return std::max(1, days);
}

inline SpecimenSource standardize_specimen_source(std::string_view raw,
                                                  const MappingTables& tables,
                                                  UnmappedReport* report = nullptr) {
    std::string key = normalize_token(raw);
    auto it = tables.specimen_source.find(key);
    if (it != tables.specimen_source.end()) return it->second;
    if (report && !key.empty()) report->specimen_sources[key]++;
    return SpecimenSource::other_standardized;
}

} // namespace utirisk
