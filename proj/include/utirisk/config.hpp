// Run configuration: mapping tables, likelihood table, feature spec,
// generator / cohort / training / report settings. Everything has a
// built-in default; a JSON config file can override any section.
//
// The shipped antibiotic, organism and DDD tables are illustrative
// defaults for synthetic data, not a clinical reference; edit the config
// to substitute authoritative lists.
#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "utirisk/calendar.hpp"
#include "utirisk/normalize.hpp"
#include "utirisk/risk.hpp"
#include "utirisk/tensor.hpp"

namespace utirisk {

enum class Aggregate { count, any, last, sum };

inline const char* to_string(Aggregate a) {
    switch (a) {
        case Aggregate::count: return "count";
        case Aggregate::any: return "any";
        case Aggregate::last: return "last";
        case Aggregate::sum: return "sum";
    }
    return "?";
}

inline std::optional<Aggregate> aggregate_from(std::string_view s) {
    if (s == "count") return Aggregate::count;
    if (s == "any") return Aggregate::any;
    if (s == "last") return Aggregate::last;
    if (s == "sum") return Aggregate::sum;
    return std::nullopt;
}

enum class KeyMatch { any, exact, prefix, suffix };

inline const char* to_string(KeyMatch m) {
    switch (m) {
        case KeyMatch::any: return "any";
        case KeyMatch::exact: return "exact";
        case KeyMatch::prefix: return "prefix";
        case KeyMatch::suffix: return "suffix";
    }
    return "?";
}

inline std::optional<KeyMatch> key_match_from(std::string_view s) {
    if (s == "any") return KeyMatch::any;
    if (s == "exact") return KeyMatch::exact;
    if (s == "prefix") return KeyMatch::prefix;
    if (s == "suffix") return KeyMatch::suffix;
    return std::nullopt;
}

struct TensorSelector {
    FeatureNamespace ns = FeatureNamespace::drug;
    KeyMatch match = KeyMatch::any;
    std::string key;
    int min_value = 1; // cells below this value do not count

    bool matches(const FeatureId& id) const {
        if (id.ns != ns) return false;
        switch (match) {
            case KeyMatch::any: return true;
            case KeyMatch::exact: return id.key == key;
            case KeyMatch::prefix: return id.key.rfind(key, 0) == 0;
            case KeyMatch::suffix:
                return id.key.size() >= key.size() &&
                       id.key.compare(id.key.size() - key.size(), key.size(), key) == 0;
        }
        return false;
    }
};

// One model feature. Sources:
//   tensor      — window aggregate over matching tensor columns
//   demographic — read from the snapshot at the index month
//   derived     — quantities that need event/episode context
//                 (prior_uti_episodes, n_hospital_admissions)
struct FeatureDef {
    enum class Source { tensor, demographic, derived };

    std::string name;
    Source source = Source::tensor;
    TensorSelector selector;
    std::string field;   // demographic field name
    std::string derived; // derived kind
    double param = 0.0;  // e.g. min episode peak
    Aggregate aggregate = Aggregate::count;
};

struct FeatureSpec {
    std::vector<FeatureDef> defs;

    std::vector<std::string> names() const {
        std::vector<std::string> out;
        out.reserve(defs.size());
        for (const auto& d : defs) out.push_back(d.name);
        return out;
    }

    void validate() const {
        std::set<std::string> seen;
        for (const auto& d : defs) {
            if (d.name.empty()) throw std::invalid_argument("feature spec: empty feature name");
            if (!seen.insert(d.name).second)
                throw std::invalid_argument("feature spec: duplicate feature name " + d.name);
        }
    }
};

struct CohortConfig {
    int lookback_days = 365;
    int min_age = 18;
    double control_ratio = 0.75; // controls per retained UTI row
};

struct TrainConfig {
    int max_depth = 4;
    int rounds = 200;
    double learning_rate = 0.1;
    double l2 = 1.0;
    double min_hessian = 1.0;
    double scale_pos_weight = 0.0; // 0 = auto (#neg / #pos on the train split)
    int early_stopping_rounds = 20;
    int histogram_bins = 256;
};

struct ReportConfig {
    double threshold = 0.5; // probability cut for confusion-based metrics
    int shap_top_k = 15;
};

// Optional synthetic risk driver: patients whose target severity is high
// get planted history events for `feature`, at a rate scaling with
// strength. Strength 0 makes the plant independent of severity.
struct PlantedSignal {
    std::string feature = "n_resistant_results";
    int direction = 1;
    double strength = 5.0;
    double base_rate = 0.004;
    // Pairwise model the plant is engineered to separate.
    double target_pair_lo = 0.2;
    double target_pair_hi = 0.6;
};

struct GeneratorConfig {
    uint64_t seed = 1;
    int patient_count = 1000;

    // Age band sampling (inclusive bounds) at study start.
    std::vector<std::pair<int, int>> age_bands = {{8, 17},  {18, 24}, {25, 44},
                                                  {45, 64}, {65, 84}, {85, 97}};
    std::vector<double> age_weights = {0.03, 0.10, 0.34, 0.28, 0.20, 0.05};

    double male_weight = 0.46;
    double female_weight = 0.53;
    double unknown_sex_weight = 0.01;
    double female_uti_odds = 2.0; // odds multiplier on UTI target severity for females

    std::map<std::string, double> living_prevalence = {
        {"housebound", 0.015}, {"nursing-or-care-home", 0.010}, {"homeless", 0.002}};
    std::map<std::string, double> comorbidity_prevalence = {{"incontinent-urinary", 0.003},
                                                            {"dementia", 0.020},
                                                            {"covid-high-risk", 0.060},
                                                            {"covid-increased-risk", 0.300},
                                                            {"organ-transplant", 0.001}};

    // Per-year rates of background events with no UTI relevance.
    double steroid_rate = 0.8;
    double hormone_rate = 0.5;
    double admission_rate = 0.12;
    double catheter_rate = 0.04;

    // Target severity weights over {none, 0.2, 0.4, 0.6, 0.8, 1.0}.
    std::vector<double> severity_weights = {0.70, 0.18, 0.03, 0.03, 0.04, 0.02};

    // Window of candidate index-cluster days, kept >= 365 so the
    // 12-month lookback fits inside the calendar.
    int index_day_lo = 510;
    int index_day_hi = 940;

    std::optional<PlantedSignal> planted = PlantedSignal{};
};

inline MappingTables default_mapping_tables() {
    MappingTables t;
    using AC = AntibioticCategory;
    using BA = BacteriaAssociation;
    t.antibiotic_category = {
        {"trimethoprim", AC::regularly},   {"nitrofurantoin", AC::regularly},
        {"pivmecillinam", AC::regularly},  {"fosfomycin", AC::regularly},
        {"cefalexin", AC::sometimes},      {"co-amoxiclav", AC::sometimes},
        {"ciprofloxacin", AC::sometimes},  {"amoxicillin", AC::sometimes},
        {"doxycycline", AC::rarely},       {"clarithromycin", AC::rarely},
        {"erythromycin", AC::rarely},      {"flucloxacillin", AC::rarely},
        {"metronidazole", AC::rarely},
    };
    t.organism_association = {
        {"escherichia coli", BA::regularly},
        {"klebsiella pneumoniae", BA::regularly},
        {"proteus mirabilis", BA::regularly},
        {"staphylococcus saprophyticus", BA::regularly},
        {"enterococcus faecalis", BA::sometimes},
        {"pseudomonas aeruginosa", BA::sometimes},
        {"streptococcus agalactiae", BA::sometimes},
        {"lactobacillus species", BA::no_growth_or_rarely},
        {"coagulase-negative staphylococcus", BA::no_growth_or_rarely},
        {"corynebacterium species", BA::no_growth_or_rarely},
    };
    t.ddd_mg_per_day = {
        {"trimethoprim", 2000}, {"nitrofurantoin", 400}, {"pivmecillinam", 1200},
        {"fosfomycin", 3000},   {"cefalexin", 2000},     {"co-amoxiclav", 1500},
        {"ciprofloxacin", 1000}, {"amoxicillin", 1500},  {"doxycycline", 200},
        {"clarithromycin", 500}, {"erythromycin", 2000}, {"flucloxacillin", 2000},
    };
    t.specimen_source = {
        {"catheter-stream", SpecimenSource::catheter_stream},
        {"catheter stream urine", SpecimenSource::catheter_stream},
        {"csu", SpecimenSource::catheter_stream},
        {"mid-stream", SpecimenSource::mid_stream},
        {"mid stream urine", SpecimenSource::mid_stream},
        {"msu", SpecimenSource::mid_stream},
        {"other", SpecimenSource::other_standardized},
    };
    return t;
}

inline FeatureSpec default_feature_spec() {
    FeatureSpec spec;
    auto tensor = [](std::string name, FeatureNamespace ns, KeyMatch match, std::string key,
                     int min_value = 1, Aggregate agg = Aggregate::count) {
        FeatureDef d;
        d.name = std::move(name);
        d.source = FeatureDef::Source::tensor;
        d.selector = TensorSelector{ns, match, std::move(key), min_value};
        d.aggregate = agg;
        return d;
    };
    auto demographic = [](std::string name, std::string field) {
        FeatureDef d;
        d.name = std::move(name);
        d.source = FeatureDef::Source::demographic;
        d.field = std::move(field);
        return d;
    };
    auto derived = [](std::string name, std::string kind, double param = 0.0) {
        FeatureDef d;
        d.name = std::move(name);
        d.source = FeatureDef::Source::derived;
        d.derived = std::move(kind);
        d.param = param;
        return d;
    };

    spec.defs = {
        tensor("n_antibiotics_dispensed", FeatureNamespace::antibiotic_category, KeyMatch::prefix,
               "dispensed_"),
        tensor("n_uti_regular_antibiotics", FeatureNamespace::antibiotic_category, KeyMatch::exact,
               "dispensed_regularly"),
        tensor("n_urine_specimens", FeatureNamespace::culture, KeyMatch::exact, "specimen"),
        tensor("n_positive_cultures", FeatureNamespace::culture, KeyMatch::exact,
               "event_association", 2),
        tensor("n_resistant_results", FeatureNamespace::ast_pair, KeyMatch::suffix, "|resistant"),
        derived("n_hospital_admissions", "n_hospital_admissions"),
        tensor("n_catheter_dispensations", FeatureNamespace::catheter, KeyMatch::any, ""),
        derived("prior_uti_episodes", "prior_uti_episodes", 0.6),
        demographic("age", "age"),
        demographic("sex_female", "sex_female"),
        demographic("housebound", "housebound"),
        demographic("nursing_or_care_home", "nursing-or-care-home"),
        demographic("homeless", "homeless"),
        demographic("dementia", "dementia"),
        demographic("incontinent_urinary", "incontinent-urinary"),
        demographic("covid_high_risk", "covid-high-risk"),
        demographic("covid_increased_risk", "covid-increased-risk"),
        demographic("organ_transplant", "organ-transplant"),
        demographic("demographics_missing", "demographics_missing"),
    };
    return spec;
}

struct PipelineConfig {
    uint64_t seed = 1;
    StudyCalendar calendar = StudyCalendar::default_study_period();
    MappingTables tables = default_mapping_tables();
    LikelihoodTable likelihood = LikelihoodTable::default_table();
    FeatureSpec features = default_feature_spec();
    GeneratorConfig generator;
    CohortConfig cohort;
    TrainConfig train;
    ReportConfig report;
    uint64_t digest = 0; // of the effective config, for stage manifests
};

inline uint64_t fnv1a64(std::string_view bytes, uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// --- JSON mapping ---------------------------------------------------------

namespace cfgjson {

using nlohmann::json;

inline json to_json(const MappingTables& t) {
    json j;
    for (const auto& [k, v] : std::map<std::string, AntibioticCategory>(
             t.antibiotic_category.begin(), t.antibiotic_category.end()))
        j["antibiotic_category"][k] = to_string(v);
    for (const auto& [k, v] : std::map<std::string, BacteriaAssociation>(
             t.organism_association.begin(), t.organism_association.end()))
        j["organism_association"][k] = to_string(v);
    for (const auto& [k, v] :
         std::map<std::string, double>(t.ddd_mg_per_day.begin(), t.ddd_mg_per_day.end()))
        j["ddd_mg_per_day"][k] = v;
    for (const auto& [k, v] : std::map<std::string, SpecimenSource>(t.specimen_source.begin(),
                                                                    t.specimen_source.end()))
        j["specimen_source"][k] = to_string(v);
    j["mixed_growth_level"] = to_string(t.mixed_growth_level);
    j["fallback_duration_days"] = t.fallback_duration_days;
    return j;
}

inline void from_json_into(const json& j, MappingTables& t) {
    if (j.contains("antibiotic_category")) {
        t.antibiotic_category.clear();
        for (auto& [k, v] : j.at("antibiotic_category").items()) {
            auto c = antibiotic_category_from(v.get<std::string>());
            if (!c) throw std::invalid_argument("config: bad antibiotic category for " + k);
            t.antibiotic_category[normalize_token(k)] = *c;
        }
    }
    if (j.contains("organism_association")) {
        t.organism_association.clear();
        for (auto& [k, v] : j.at("organism_association").items()) {
            auto a = bacteria_association_from(v.get<std::string>());
            if (!a) throw std::invalid_argument("config: bad organism association for " + k);
            t.organism_association[normalize_token(k)] = *a;
        }
    }
    if (j.contains("ddd_mg_per_day")) {
        t.ddd_mg_per_day.clear();
        for (auto& [k, v] : j.at("ddd_mg_per_day").items())
            t.ddd_mg_per_day[normalize_token(k)] = v.get<double>();
    }
    if (j.contains("specimen_source")) {
        t.specimen_source.clear();
        for (auto& [k, v] : j.at("specimen_source").items()) {
            std::string s = v.get<std::string>();
            SpecimenSource src;
            if (s == "catheter-stream") src = SpecimenSource::catheter_stream;
            else if (s == "mid-stream") src = SpecimenSource::mid_stream;
            else if (s == "other") src = SpecimenSource::other_standardized;
            else throw std::invalid_argument("config: bad specimen source for " + k);
            t.specimen_source[normalize_token(k)] = src;
        }
    }
    if (j.contains("mixed_growth_level")) {
        auto a = bacteria_association_from(j.at("mixed_growth_level").get<std::string>());
        if (!a) throw std::invalid_argument("config: bad mixed_growth_level");
        t.mixed_growth_level = *a;
    }
    if (j.contains("fallback_duration_days"))
        t.fallback_duration_days = j.at("fallback_duration_days").get<int>();
}

inline json to_json(const LikelihoodTable& t) {
    json rows = json::array();
    for (int a = 0; a < 4; ++a) {
        json row = json::array();
        for (int u = 0; u < 4; ++u) row.push_back(t.at(a, u));
        rows.push_back(row);
    }
    return json{{"cells", rows}, {"n390_override", 1.0}};
}

inline LikelihoodTable likelihood_from_json(const json& j) {
    std::array<std::array<double, 4>, 4> cells{};
    const auto& rows = j.at("cells");
    if (rows.size() != 4) throw std::invalid_argument("config: likelihood table needs 4 rows");
    for (size_t a = 0; a < 4; ++a) {
        if (rows[a].size() != 4)
            throw std::invalid_argument("config: likelihood table needs 4 columns");
        for (size_t u = 0; u < 4; ++u) cells[a][u] = rows[a][u].get<double>();
    }
    if (j.contains("n390_override") && j.at("n390_override").get<double>() != 1.0)
        throw std::invalid_argument("config: the N39.0 override is fixed at 1.0");
    return LikelihoodTable(cells);
}

inline json to_json(const FeatureSpec& spec) {
    json arr = json::array();
    for (const auto& d : spec.defs) {
        json jd;
        jd["name"] = d.name;
        switch (d.source) {
            case FeatureDef::Source::tensor:
                jd["source"] = "tensor";
                jd["namespace"] = to_string(d.selector.ns);
                jd["match"] = to_string(d.selector.match);
                jd["key"] = d.selector.key;
                jd["min_value"] = d.selector.min_value;
                jd["aggregate"] = to_string(d.aggregate);
                break;
            case FeatureDef::Source::demographic:
                jd["source"] = "demographic";
                jd["field"] = d.field;
                break;
            case FeatureDef::Source::derived:
                jd["source"] = "derived";
                jd["kind"] = d.derived;
                jd["param"] = d.param;
                break;
        }
        arr.push_back(jd);
    }
    return arr;
}

inline FeatureSpec features_from_json(const json& arr) {
    FeatureSpec spec;
    for (const auto& jd : arr) {
        FeatureDef d;
        d.name = jd.at("name").get<std::string>();
        std::string source = jd.at("source").get<std::string>();
        if (source == "tensor") {
            d.source = FeatureDef::Source::tensor;
            auto ns = feature_namespace_from(jd.at("namespace").get<std::string>());
            if (!ns) throw std::invalid_argument("config: bad namespace in feature " + d.name);
            auto match = key_match_from(jd.at("match").get<std::string>());
            if (!match) throw std::invalid_argument("config: bad match in feature " + d.name);
            d.selector.ns = *ns;
            d.selector.match = *match;
            d.selector.key = jd.value("key", std::string());
            d.selector.min_value = jd.value("min_value", 1);
            auto agg = aggregate_from(jd.value("aggregate", std::string("count")));
            if (!agg) throw std::invalid_argument("config: bad aggregate in feature " + d.name);
            d.aggregate = *agg;
        } else if (source == "demographic") {
            d.source = FeatureDef::Source::demographic;
            d.field = jd.at("field").get<std::string>();
        } else if (source == "derived") {
            d.source = FeatureDef::Source::derived;
            d.derived = jd.at("kind").get<std::string>();
            d.param = jd.value("param", 0.0);
        } else {
            throw std::invalid_argument("config: bad feature source " + source);
        }
        spec.defs.push_back(std::move(d));
    }
    spec.validate();
    return spec;
}

inline json to_json(const GeneratorConfig& g) {
    json j;
    j["seed"] = g.seed;
    j["patient_count"] = g.patient_count;
    json bands = json::array();
    for (size_t i = 0; i < g.age_bands.size(); ++i)
        bands.push_back(json{{"lo", g.age_bands[i].first},
                             {"hi", g.age_bands[i].second},
                             {"weight", g.age_weights[i]}});
    j["age_bands"] = bands;
    j["sex_weights"] = json{{"male", g.male_weight},
                            {"female", g.female_weight},
                            {"unknown", g.unknown_sex_weight}};
    j["female_uti_odds"] = g.female_uti_odds;
    j["living_prevalence"] = g.living_prevalence;
    j["comorbidity_prevalence"] = g.comorbidity_prevalence;
    j["rates_per_year"] = json{{"steroid", g.steroid_rate},
                               {"hormone", g.hormone_rate},
                               {"admission", g.admission_rate},
                               {"catheter", g.catheter_rate}};
    j["severity_weights"] = g.severity_weights;
    j["index_day_lo"] = g.index_day_lo;
    j["index_day_hi"] = g.index_day_hi;
    if (g.planted) {
        j["planted"] = json{{"feature", g.planted->feature},
                            {"direction", g.planted->direction},
                            {"strength", g.planted->strength},
                            {"base_rate", g.planted->base_rate},
                            {"target_pair_lo", g.planted->target_pair_lo},
                            {"target_pair_hi", g.planted->target_pair_hi}};
    } else {
        j["planted"] = nullptr;
    }
    return j;
}

inline void from_json_into(const json& j, GeneratorConfig& g) {
    if (j.contains("seed")) g.seed = j.at("seed").get<uint64_t>();
    if (j.contains("patient_count")) g.patient_count = j.at("patient_count").get<int>();
    if (j.contains("age_bands")) {
        g.age_bands.clear();
        g.age_weights.clear();
        for (const auto& b : j.at("age_bands")) {
            g.age_bands.emplace_back(b.at("lo").get<int>(), b.at("hi").get<int>());
            g.age_weights.push_back(b.at("weight").get<double>());
        }
    }
    if (j.contains("sex_weights")) {
        g.male_weight = j.at("sex_weights").value("male", g.male_weight);
        g.female_weight = j.at("sex_weights").value("female", g.female_weight);
        g.unknown_sex_weight = j.at("sex_weights").value("unknown", g.unknown_sex_weight);
    }
    if (j.contains("female_uti_odds")) g.female_uti_odds = j.at("female_uti_odds").get<double>();
    if (j.contains("living_prevalence"))
        g.living_prevalence = j.at("living_prevalence").get<std::map<std::string, double>>();
    if (j.contains("comorbidity_prevalence"))
        g.comorbidity_prevalence =
            j.at("comorbidity_prevalence").get<std::map<std::string, double>>();
    if (j.contains("rates_per_year")) {
        const auto& r = j.at("rates_per_year");
        g.steroid_rate = r.value("steroid", g.steroid_rate);
        g.hormone_rate = r.value("hormone", g.hormone_rate);
        g.admission_rate = r.value("admission", g.admission_rate);
        g.catheter_rate = r.value("catheter", g.catheter_rate);
    }
    if (j.contains("severity_weights"))
        g.severity_weights = j.at("severity_weights").get<std::vector<double>>();
    if (j.contains("index_day_lo")) g.index_day_lo = j.at("index_day_lo").get<int>();
    if (j.contains("index_day_hi")) g.index_day_hi = j.at("index_day_hi").get<int>();
    if (j.contains("planted")) {
        if (j.at("planted").is_null()) {
            g.planted = std::nullopt;
        } else {
            PlantedSignal p;
            const auto& jp = j.at("planted");
            p.feature = jp.value("feature", p.feature);
            p.direction = jp.value("direction", p.direction);
            p.strength = jp.value("strength", p.strength);
            p.base_rate = jp.value("base_rate", p.base_rate);
            p.target_pair_lo = jp.value("target_pair_lo", p.target_pair_lo);
            p.target_pair_hi = jp.value("target_pair_hi", p.target_pair_hi);
            g.planted = p;
        }
    }
}

} // namespace cfgjson

inline nlohmann::json config_to_json(const PipelineConfig& cfg) {
    nlohmann::json j;
    j["seed"] = cfg.seed;
    j["calendar"] = {{"start", format_date(cfg.calendar.start())},
                     {"end", format_date(cfg.calendar.end())}};
    j["mapping_tables"] = cfgjson::to_json(cfg.tables);
    j["likelihood_table"] = cfgjson::to_json(cfg.likelihood);
    j["features"] = cfgjson::to_json(cfg.features);
    j["generator"] = cfgjson::to_json(cfg.generator);
    j["cohort"] = {{"lookback_days", cfg.cohort.lookback_days},
                   {"min_age", cfg.cohort.min_age},
                   {"control_ratio", cfg.cohort.control_ratio}};
    j["train"] = {{"max_depth", cfg.train.max_depth},
                  {"rounds", cfg.train.rounds},
                  {"learning_rate", cfg.train.learning_rate},
                  {"l2", cfg.train.l2},
                  {"min_hessian", cfg.train.min_hessian},
                  {"scale_pos_weight", cfg.train.scale_pos_weight},
                  {"early_stopping_rounds", cfg.train.early_stopping_rounds},
                  {"histogram_bins", cfg.train.histogram_bins}};
    j["report"] = {{"threshold", cfg.report.threshold}, {"shap_top_k", cfg.report.shap_top_k}};
    return j;
}

inline PipelineConfig config_from_json(const nlohmann::json& j) {
    PipelineConfig cfg;
    if (j.contains("seed")) cfg.seed = j.at("seed").get<uint64_t>();
    if (j.contains("calendar")) {
        auto start = parse_date(j.at("calendar").at("start").get<std::string>());
        auto end = parse_date(j.at("calendar").at("end").get<std::string>());
        if (!start || !end) throw std::invalid_argument("config: bad calendar dates");
        cfg.calendar = StudyCalendar(*start, *end);
    }
    if (j.contains("mapping_tables")) cfgjson::from_json_into(j.at("mapping_tables"), cfg.tables);
    if (j.contains("likelihood_table"))
        cfg.likelihood = cfgjson::likelihood_from_json(j.at("likelihood_table"));
    if (j.contains("features")) cfg.features = cfgjson::features_from_json(j.at("features"));
    if (j.contains("generator")) cfgjson::from_json_into(j.at("generator"), cfg.generator);
    if (j.contains("cohort")) {
        const auto& c = j.at("cohort");
        cfg.cohort.lookback_days = c.value("lookback_days", cfg.cohort.lookback_days);
        cfg.cohort.min_age = c.value("min_age", cfg.cohort.min_age);
        cfg.cohort.control_ratio = c.value("control_ratio", cfg.cohort.control_ratio);
    }
    if (j.contains("train")) {
        const auto& t = j.at("train");
        cfg.train.max_depth = t.value("max_depth", cfg.train.max_depth);
        cfg.train.rounds = t.value("rounds", cfg.train.rounds);
        cfg.train.learning_rate = t.value("learning_rate", cfg.train.learning_rate);
        cfg.train.l2 = t.value("l2", cfg.train.l2);
        cfg.train.min_hessian = t.value("min_hessian", cfg.train.min_hessian);
        cfg.train.scale_pos_weight = t.value("scale_pos_weight", cfg.train.scale_pos_weight);
        cfg.train.early_stopping_rounds =
            t.value("early_stopping_rounds", cfg.train.early_stopping_rounds);
        cfg.train.histogram_bins = t.value("histogram_bins", cfg.train.histogram_bins);
    }
    if (j.contains("report")) {
        cfg.report.threshold = j.at("report").value("threshold", cfg.report.threshold);
        cfg.report.shap_top_k = j.at("report").value("shap_top_k", cfg.report.shap_top_k);
    }
    cfg.features.validate();
    return cfg;
}

inline PipelineConfig default_config() {
    PipelineConfig cfg;
    cfg.digest = fnv1a64(config_to_json(cfg).dump());
    return cfg;
}

inline PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    auto j = nlohmann::json::parse(ss.str());
    PipelineConfig cfg = config_from_json(j);
    cfg.digest = fnv1a64(config_to_json(cfg).dump());
    return cfg;
}

} // namespace utirisk
