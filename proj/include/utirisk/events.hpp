// Canonical event records shared by the whole pipeline. One struct per
// ingest source; days are calendar day indices (see calendar.hpp).
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "utirisk/calendar.hpp"

namespace utirisk {

using PatientId = std::string;

enum class DrugClass { antibiotic, steroid, hormone, catheter_supply };
enum class Route { oral, topical, other };
enum class CultureResult {
    no_significant_growth,
    no_growth,
    mixed_growth,
    invalid,
    other_non_ast,
    refer_to_ast
};
enum class Susceptibility { susceptible, intermediate, resistant };
enum class SpecimenSource { catheter_stream, mid_stream, other_standardized };
enum class Sex { male, female, unknown };

inline const char* to_string(DrugClass c) {
    switch (c) {
        case DrugClass::antibiotic: return "antibiotic";
        case DrugClass::steroid: return "steroid";
        case DrugClass::hormone: return "hormone";
        case DrugClass::catheter_supply: return "catheter-supply";
    }
    return "?";
}

inline std::optional<DrugClass> drug_class_from(std::string_view s) {
    if (s == "antibiotic") return DrugClass::antibiotic;
    if (s == "steroid") return DrugClass::steroid;
    if (s == "hormone") return DrugClass::hormone;
    if (s == "catheter-supply") return DrugClass::catheter_supply;
    return std::nullopt;
}

inline const char* to_string(Route r) {
    switch (r) {
        case Route::oral: return "oral";
        case Route::topical: return "topical";
        case Route::other: return "other";
    }
    return "?";
}

inline std::optional<Route> route_from(std::string_view s) {
    if (s == "oral") return Route::oral;
    if (s == "topical") return Route::topical;
    if (s == "other") return Route::other;
    return std::nullopt;
}

inline const char* to_string(CultureResult r) {
    switch (r) {
        case CultureResult::no_significant_growth: return "no-significant-growth";
        case CultureResult::no_growth: return "no-growth";
        case CultureResult::mixed_growth: return "mixed-growth";
        case CultureResult::invalid: return "invalid";
        case CultureResult::other_non_ast: return "other-non-ast";
        case CultureResult::refer_to_ast: return "refer-to-ast";
    }
    return "?";
}

inline std::optional<CultureResult> culture_result_from(std::string_view s) {
    if (s == "no-significant-growth") return CultureResult::no_significant_growth;
    if (s == "no-growth") return CultureResult::no_growth;
    if (s == "mixed-growth") return CultureResult::mixed_growth;
    if (s == "invalid") return CultureResult::invalid;
    if (s == "other-non-ast") return CultureResult::other_non_ast;
    if (s == "refer-to-ast") return CultureResult::refer_to_ast;
    return std::nullopt;
}

// Result categories that may carry an organism name.
inline bool implies_growth(CultureResult r) {
    return r == CultureResult::mixed_growth || r == CultureResult::no_significant_growth;
}

inline const char* to_string(Susceptibility s) {
    switch (s) {
        case Susceptibility::susceptible: return "susceptible";
        case Susceptibility::intermediate: return "intermediate";
        case Susceptibility::resistant: return "resistant";
    }
    return "?";
}

inline std::optional<Susceptibility> susceptibility_from(std::string_view s) {
    if (s == "susceptible") return Susceptibility::susceptible;
    if (s == "intermediate") return Susceptibility::intermediate;
    if (s == "resistant") return Susceptibility::resistant;
    return std::nullopt;
}

inline const char* to_string(SpecimenSource s) {
    switch (s) {
        case SpecimenSource::catheter_stream: return "catheter-stream";
        case SpecimenSource::mid_stream: return "mid-stream";
        case SpecimenSource::other_standardized: return "other";
    }
    return "?";
}

inline const char* to_string(Sex s) {
    switch (s) {
        case Sex::male: return "male";
        case Sex::female: return "female";
        case Sex::unknown: return "unknown";
    }
    return "?";
}

inline std::optional<Sex> sex_from(std::string_view s) {
    if (s == "male") return Sex::male;
    if (s == "female") return Sex::female;
    if (s == "unknown") return Sex::unknown;
    return std::nullopt;
}

inline const std::vector<std::string>& living_flag_names() {
    static const std::vector<std::string> names = {"housebound", "nursing-or-care-home", "homeless"};
    return names;
}

inline const std::vector<std::string>& comorbidity_flag_names() {
    static const std::vector<std::string> names = {
        "incontinent-urinary", "dementia", "covid-high-risk", "covid-increased-risk",
        "organ-transplant"};
    return names;
}

struct DispensationEvent {
    PatientId patient;
    int day = 0;
    std::string drug_name; // normalized: case-folded, trimmed
    double dosage_mg = 0;  // per unit
    int quantity = 0;      // unit count
    DrugClass drug_class = DrugClass::antibiotic;
    Route route = Route::oral;

    auto key() const {
        return std::tie(patient, day, drug_name, dosage_mg, quantity, drug_class, route);
    }
    bool operator<(const DispensationEvent& o) const { return key() < o.key(); }
};

struct UrineCultureEvent {
    PatientId patient;
    int day = 0; // processing date
    CultureResult result = CultureResult::no_growth;
    std::string organism; // empty unless the result implies growth
    SpecimenSource source = SpecimenSource::mid_stream;

    auto key() const { return std::tie(patient, day, result, organism, source); }
    bool operator<(const UrineCultureEvent& o) const { return key() < o.key(); }
};

struct AstResultEvent {
    PatientId patient;
    int day = 0;
    std::string organism;
    std::string antibiotic;
    Susceptibility susceptibility = Susceptibility::susceptible;
    SpecimenSource source = SpecimenSource::mid_stream;

    auto key() const { return std::tie(patient, day, organism, antibiotic, susceptibility, source); }
    bool operator<(const AstResultEvent& o) const { return key() < o.key(); }
};

struct AdmissionEvent {
    PatientId patient;
    int entry_day = 0;
    int discharge_day = 0; // >= entry_day; clipped to the calendar on ingest
    std::set<std::string> icd10;
    std::set<std::string> opcs;

    auto key() const { return std::tie(patient, entry_day, discharge_day, icd10, opcs); }
    bool operator<(const AdmissionEvent& o) const { return key() < o.key(); }
};

struct DemographicSnapshot {
    PatientId patient;
    int month = 0; // calendar month index
    int age = 0;
    Sex sex = Sex::unknown;
    std::optional<Date> death;
    std::set<std::string> living;     // tokens from living_flag_names()
    std::set<std::string> comorbidity; // tokens from comorbidity_flag_names()
    std::string lsoa;

    auto key() const { return std::tie(patient, month, age, sex, living, comorbidity, lsoa); }
    bool operator<(const DemographicSnapshot& o) const { return key() < o.key(); }
};

// All parsed events from one dataset.
struct EventSet {
    std::vector<DispensationEvent> dispensations;
    std::vector<UrineCultureEvent> cultures;
    std::vector<AstResultEvent> asts;
    std::vector<AdmissionEvent> admissions;
    std::vector<DemographicSnapshot> demographics;

    size_t total() const {
        return dispensations.size() + cultures.size() + asts.size() + admissions.size() +
               demographics.size();
    }

    // Canonical order: any parse sharding must merge back to this.
    void stable_sort() {
        std::sort(dispensations.begin(), dispensations.end());
        std::sort(cultures.begin(), cultures.end());
        std::sort(asts.begin(), asts.end());
        std::sort(admissions.begin(), admissions.end());
        std::sort(demographics.begin(), demographics.end());
    }

    std::vector<PatientId> patients() const {
        std::set<PatientId> ids;
        for (const auto& e : dispensations) ids.insert(e.patient);
        for (const auto& e : cultures) ids.insert(e.patient);
        for (const auto& e : asts) ids.insert(e.patient);
        for (const auto& e : admissions) ids.insert(e.patient);
        for (const auto& e : demographics) ids.insert(e.patient);
        return {ids.begin(), ids.end()};
    }
};

// Per-patient index into an EventSet, for patient-sharded processing.
struct PatientEvents {
    std::vector<const DispensationEvent*> dispensations;
    std::vector<const UrineCultureEvent*> cultures;
    std::vector<const AstResultEvent*> asts;
    std::vector<const AdmissionEvent*> admissions;
    std::vector<const DemographicSnapshot*> demographics;
};

inline std::map<PatientId, PatientEvents> group_by_patient(const EventSet& es) {
    std::map<PatientId, PatientEvents> out;
    for (const auto& e : es.dispensations) out[e.patient].dispensations.push_back(&e);
    for (const auto& e : es.cultures) out[e.patient].cultures.push_back(&e);
    for (const auto& e : es.asts) out[e.patient].asts.push_back(&e);
    for (const auto& e : es.admissions) out[e.patient].admissions.push_back(&e);
    for (const auto& e : es.demographics) out[e.patient].demographics.push_back(&e);
    return out;
}

} // namespace utirisk
