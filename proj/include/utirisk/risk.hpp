// Day-level UTI likelihood. Three evidence streams are aligned on the
// calendar — antibiotic relevance category (A), urine pathology
// association (U), and the N39.0 hospital diagnosis flag — then combined
// into the discrete likelihood set {0, 0.2, 0.4, 0.6, 0.8, 1.0}.
//
// Temporal extensions before scoring:
//   - dispensations mark [day-3, day+duration-1] with their category,
//     duration inferred from the defined daily dose;
//   - urine specimens mark [day-7, day+7] with their association level;
//   - admission records are not extended: N39.0 covers entry..discharge.
// Overlapping evidence combines by per-day max, so applying extensions
// twice equals applying them once.
#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <vector>

#include "utirisk/normalize.hpp"
#include "utirisk/tensor.hpp"

namespace utirisk {

inline constexpr int kDispensationLookbackDays = 3;
inline constexpr int kSpecimenWindowDays = 7;

struct DayRange {
    int lo;
    int hi; // inclusive
};

inline DayRange extend_dispensation_range(int day, int duration_days) {
    return {day - kDispensationLookbackDays, day + duration_days - 1};
}

inline DayRange extend_specimen_range(int day) {
    return {day - kSpecimenWindowDays, day + kSpecimenWindowDays};
}

// N39.0 stays on the recorded stay only.
inline std::optional<DayRange> admission_n390_days(const AdmissionEvent& ev) {
    if (!ev.icd10.contains("N39.0")) return std::nullopt;
    return DayRange{ev.entry_day, ev.discharge_day};
}

// Likelihood per (A, U) level pair, with the N39.0 override pinned to 1.0.
// Must be monotone non-decreasing in each argument with L(0,0) = 0 and
// values in {0, 0.2, 0.4, 0.6, 0.8}.
class LikelihoodTable {
public:
    LikelihoodTable() = default;

    explicit LikelihoodTable(const std::array<std::array<double, 4>, 4>& cells) : cells_(cells) {
        validate();
    }

    // Default reconstruction of the clinician table: driven by the
    // stronger of the two signals, with 0.8 reserved for concordant
    // strong evidence. Config-overridable.
    static LikelihoodTable default_table() {
        std::array<std::array<double, 4>, 4> c{};
        for (int a = 0; a < 4; ++a) {
            for (int u = 0; u < 4; ++u) {
                int hi = std::max(a, u), lo = std::min(a, u);
                double v = 0.0;
                if (hi == 1) v = 0.2;
                else if (hi == 2) v = 0.4;
                else if (hi == 3) v = (lo >= 2) ? 0.8 : 0.6;
                c[static_cast<size_t>(a)][static_cast<size_t>(u)] = v;
            }
        }
        return LikelihoodTable(c);
    }

    void validate() const {
        auto in_set = [](double v) {
            for (double s : {0.0, 0.2, 0.4, 0.6, 0.8})
                if (v == s) return true;
            return false;
        };
        if (cells_[0][0] != 0.0) throw std::invalid_argument("likelihood table: L(0,0) must be 0");
        for (int a = 0; a < 4; ++a)
            for (int u = 0; u < 4; ++u) {
                double v = at(a, u);
                if (!in_set(v))
                    throw std::invalid_argument("likelihood table: value outside {0,0.2,0.4,0.6,0.8}");
                if (a > 0 && v < at(a - 1, u))
                    throw std::invalid_argument("likelihood table: not monotone in antibiotic level");
                if (u > 0 && v < at(a, u - 1))
                    throw std::invalid_argument("likelihood table: not monotone in association level");
            }
    }

    double at(int a_level, int u_level) const {
        return cells_[static_cast<size_t>(a_level)][static_cast<size_t>(u_level)];
    }

    double score(int a_level, int u_level, bool n390) const {
        if (n390) return 1.0; // definitive hospital diagnosis
        return at(a_level, u_level);
    }

private:
    std::array<std::array<double, 4>, 4> cells_{};
};

struct DayRisk {
    int day = 0;
    int a_level = 0;
    int u_level = 0;
    bool n390 = false;
    double likelihood = 0.0;
};

struct LikelihoodEpisode {
    PatientId patient;
    int start_day = 0;
    int end_day = 0;
    double peak = 0.0; // max day likelihood within the run
};

// Writes the extended A and U streams into the tensor. Idempotent.
inline void apply_extensions(SparseDayTensor& tensor, const EventSet& events,
                             const MappingTables& tables, UnmappedReport* unmapped = nullptr) {
    auto& dict = tensor.dict();
    int a_col = dict.get_or_add(antibiotic_active_column());
    int u_col = dict.get_or_add(culture_association_column());

    for (const auto& ev : events.dispensations) {
        if (ev.drug_class != DrugClass::antibiotic) continue;
        auto cat = classify_antibiotic(ev.drug_name, tables, unmapped);
        if (cat == AntibioticCategory::none) continue;
        int p = *tensor.patient_index(ev.patient);
        int duration = infer_duration_days(ev, tables, unmapped);
        auto range = extend_dispensation_range(ev.day, duration);
        tensor.write_span(p, a_col, range.lo, range.hi, static_cast<uint8_t>(cat));
    }

    for (const auto& ev : events.cultures) {
        auto level = classify_culture(ev, tables, unmapped);
        if (level == BacteriaAssociation::none) continue;
        int p = *tensor.patient_index(ev.patient);
        auto range = extend_specimen_range(ev.day);
        tensor.write_span(p, u_col, range.lo, range.hi, static_cast<uint8_t>(level));
    }

    for (const auto& ev : events.asts) {
        auto level = classify_ast(ev, tables, unmapped);
        int p = *tensor.patient_index(ev.patient);
        auto range = extend_specimen_range(ev.day);
        tensor.write_span(p, u_col, range.lo, range.hi, static_cast<uint8_t>(level));
    }
}

// Per-day likelihood for one patient from the extended tensor streams.
inline std::vector<DayRisk> score_days(const SparseDayTensor& tensor, int patient,
                                       const LikelihoodTable& table) {
    const auto& dict = tensor.dict();
    auto a_col = dict.find(antibiotic_active_column());
    auto u_col = dict.find(culture_association_column());
    auto n_col = dict.find(uti_icd10_column());

    int days = tensor.calendar().days();
    std::vector<DayRisk> out(static_cast<size_t>(days));
    for (int d = 0; d < days; ++d) out[static_cast<size_t>(d)].day = d;

    tensor.for_each_cell(patient, [&](int day, int column, uint8_t value) {
        auto& r = out[static_cast<size_t>(day)];
        if (a_col && column == *a_col) r.a_level = std::max(r.a_level, int(value));
        else if (u_col && column == *u_col) r.u_level = std::max(r.u_level, int(value));
        else if (n_col && column == *n_col) r.n390 = true;
    });
    for (auto& r : out) r.likelihood = table.score(r.a_level, r.u_level, r.n390);
    return out;
}

// Maximal runs of consecutive positive-likelihood days.
inline std::vector<LikelihoodEpisode> extract_episodes(const PatientId& patient,
                                                       const std::vector<DayRisk>& days) {
    std::vector<LikelihoodEpisode> out;
    int start = -1;
    double peak = 0.0;
    for (size_t i = 0; i <= days.size(); ++i) {
        bool positive = i < days.size() && days[i].likelihood > 0.0;
        if (positive) {
            if (start < 0) { start = static_cast<int>(i); peak = 0.0; }
            peak = std::max(peak, days[i].likelihood);
        } else if (start >= 0) {
            out.push_back(LikelihoodEpisode{patient, days[static_cast<size_t>(start)].day,
                                            days[i - 1].day, peak});
            start = -1;
        }
    }
    return out;
}

// Scores every patient; returns episodes keyed by patient id.
inline std::map<PatientId, std::vector<LikelihoodEpisode>> score_all(
    const SparseDayTensor& tensor, const LikelihoodTable& table) {
    std::map<PatientId, std::vector<LikelihoodEpisode>> out;
    const auto& patients = tensor.patients();
    for (size_t p = 0; p < patients.size(); ++p) {
        auto days = score_days(tensor, static_cast<int>(p), table);
        auto eps = extract_episodes(patients[p], days);
        if (!eps.empty()) out[patients[p]] = std::move(eps);
    }
    return out;
}

} // namespace utirisk
