// Day-level sparse event grid X(T, F, P): per patient, a coordinate-sparse
// set of (day, column, value) cells over the study calendar. Values are
// presence bits or small ordinals; duplicate writes collapse by max, so
// every write is idempotent and span overlaps never double-count.
#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "utirisk/calendar.hpp"
#include "utirisk/events.hpp"
#include "utirisk/normalize.hpp"

namespace utirisk {

enum class FeatureNamespace {
    icd10,
    opcs,
    antibiotic_category,
    drug,
    culture,
    ast_pair,
    demographic,
    living,
    comorbidity,
    catheter
};

inline const char* to_string(FeatureNamespace ns) {
    switch (ns) {
        case FeatureNamespace::icd10: return "icd10";
        case FeatureNamespace::opcs: return "opcs";
        case FeatureNamespace::antibiotic_category: return "antibiotic-category";
        case FeatureNamespace::drug: return "drug";
        case FeatureNamespace::culture: return "culture";
        case FeatureNamespace::ast_pair: return "ast-pair";
        case FeatureNamespace::demographic: return "demographic";
        case FeatureNamespace::living: return "living";
        case FeatureNamespace::comorbidity: return "comorbidity";
        case FeatureNamespace::catheter: return "catheter";
    }
    return "?";
}

inline std::optional<FeatureNamespace> feature_namespace_from(std::string_view s) {
    for (auto ns : {FeatureNamespace::icd10, FeatureNamespace::opcs,
                    FeatureNamespace::antibiotic_category, FeatureNamespace::drug,
                    FeatureNamespace::culture, FeatureNamespace::ast_pair,
                    FeatureNamespace::demographic, FeatureNamespace::living,
                    FeatureNamespace::comorbidity, FeatureNamespace::catheter})
        if (s == to_string(ns)) return ns;
    return std::nullopt;
}

struct FeatureId {
    FeatureNamespace ns;
    std::string key;

    std::string qualified() const { return std::string(to_string(ns)) + ":" + key; }
    bool operator==(const FeatureId& o) const { return ns == o.ns && key == o.key; }
};

// Append-only mapping FeatureId -> column index.
class FeatureDict {
public:
    int get_or_add(const FeatureId& id) {
        auto q = id.qualified();
        auto it = index_.find(q);
        if (it != index_.end()) return it->second;
        int col = static_cast<int>(columns_.size());
        columns_.push_back(id);
        index_.emplace(std::move(q), col);
        return col;
    }

    std::optional<int> find(const FeatureId& id) const {
        auto it = index_.find(id.qualified());
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    const FeatureId& at(int col) const { return columns_.at(static_cast<size_t>(col)); }
    int size() const { return static_cast<int>(columns_.size()); }

private:
    std::vector<FeatureId> columns_;
    std::unordered_map<std::string, int> index_;
};

struct Cell {
    int32_t day;
    int32_t column;
    uint8_t value;
};

// Window aggregates for one column over a half-open day range.
struct ColumnAggregate {
    int count = 0;       // cells with value >= 1
    uint8_t any = 0;     // max value seen
    uint8_t last = 0;    // value on the latest day in range
    int last_day = -1;
};

struct WindowSlice {
    std::unordered_map<int, ColumnAggregate> per_column;
    bool fully_in_calendar = true; // false when the window starts before day 0
};

class SparseDayTensor {
public:
    SparseDayTensor(StudyCalendar calendar, std::vector<PatientId> patients)
        : calendar_(std::move(calendar)), patients_(std::move(patients)) {
        for (size_t i = 0; i < patients_.size(); ++i)
            patient_index_[patients_[i]] = static_cast<int>(i);
        grids_.resize(patients_.size());
    }

    const StudyCalendar& calendar() const { return calendar_; }
    FeatureDict& dict() { return dict_; }
    const FeatureDict& dict() const { return dict_; }
    const std::vector<PatientId>& patients() const { return patients_; }

    std::optional<int> patient_index(const PatientId& id) const {
        auto it = patient_index_.find(id);
        if (it == patient_index_.end()) return std::nullopt;
        return it->second;
    }

    // Max-combining point write; value 0 never changes the tensor.
    void write(int patient, int day, int column, uint8_t value) {
        if (value == 0 || !calendar_.contains_day(day)) return;
        uint64_t key = (static_cast<uint64_t>(static_cast<uint32_t>(column)) << 32) |
                       static_cast<uint32_t>(day);
        auto& cell = grids_[static_cast<size_t>(patient)][key];
        if (value > cell) cell = value;
    }

    // Writes [day_lo, day_hi] clipped to the calendar; empty after clipping
    // is a no-op.
    void write_span(int patient, int column, int day_lo, int day_hi, uint8_t value) {
        if (value == 0) return;
        int lo = std::max(0, day_lo);
        int hi = std::min(calendar_.days() - 1, day_hi);
        for (int d = lo; d <= hi; ++d) write(patient, d, column, value);
    }

    uint8_t value_at(int patient, int day, int column) const {
        uint64_t key = (static_cast<uint64_t>(static_cast<uint32_t>(column)) << 32) |
                       static_cast<uint32_t>(day);
        const auto& g = grids_[static_cast<size_t>(patient)];
        auto it = g.find(key);
        return it == g.end() ? 0 : it->second;
    }

    size_t cell_count() const {
        size_t n = 0;
        for (const auto& g : grids_) n += g.size();
        return n;
    }

    size_t cell_count(int patient) const { return grids_[static_cast<size_t>(patient)].size(); }

    template <typename Fn> // Fn(day, column, value)
    void for_each_cell(int patient, Fn&& fn) const {
        for (const auto& [key, value] : grids_[static_cast<size_t>(patient)]) {
            int column = static_cast<int>(key >> 32);
            int day = static_cast<int>(key & 0xffffffffu);
            fn(day, column, value);
        }
    }

    template <typename Fn> // Fn(day, column, value), days in [end-length, end)
    void for_each_cell_in_window(int patient, int end_day_exclusive, int length, Fn&& fn) const {
        int lo = end_day_exclusive - length;
        for_each_cell(patient, [&](int day, int column, uint8_t value) {
            if (day >= lo && day < end_day_exclusive) fn(day, column, value);
        });
    }

    // Aggregates strictly over days [end-length, end); days >= end never
    // contribute.
    WindowSlice slice_window(int patient, int end_day_exclusive, int length) const {
        WindowSlice slice;
        slice.fully_in_calendar =
            end_day_exclusive - length >= 0 && end_day_exclusive <= calendar_.days();
        for_each_cell_in_window(patient, end_day_exclusive, length,
                                [&](int day, int column, uint8_t value) {
                                    auto& agg = slice.per_column[column];
                                    if (value >= 1) ++agg.count;
                                    agg.any = std::max(agg.any, value);
                                    if (day > agg.last_day) {
                                        agg.last_day = day;
                                        agg.last = value;
                                    }
                                });
        return slice;
    }

    // Dense day series of one column for one patient.
    std::vector<uint8_t> column_series(int patient, int column) const {
        std::vector<uint8_t> out(static_cast<size_t>(calendar_.days()), 0);
        for_each_cell(patient, [&](int day, int col, uint8_t value) {
            if (col == column) out[static_cast<size_t>(day)] = value;
        });
        return out;
    }

    // Debug dump: patient, day, namespace, key, value. Not a stable
    // interchange format.
    void dump(std::ostream& out) const {
        out << "patient_id,day,namespace,key,value\n";
        for (size_t p = 0; p < patients_.size(); ++p) {
            std::vector<Cell> cells;
            for_each_cell(static_cast<int>(p), [&](int day, int column, uint8_t value) {
                cells.push_back(Cell{day, column, value});
            });
            std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
                return std::tie(a.day, a.column) < std::tie(b.day, b.column);
            });
            for (const auto& c : cells) {
                const auto& id = dict_.at(c.column);
                out << patients_[p] << ',' << c.day << ',' << to_string(id.ns) << ',' << id.key
                    << ',' << int(c.value) << '\n';
            }
        }
    }

private:
    StudyCalendar calendar_;
    std::vector<PatientId> patients_;
    std::unordered_map<PatientId, int> patient_index_;
    FeatureDict dict_;
    std::vector<std::unordered_map<uint64_t, uint8_t>> grids_;
};

// Reserved column keys for the framework's day streams (written by the
// risk module with span extensions applied).
inline FeatureId antibiotic_active_column() {
    return {FeatureNamespace::antibiotic_category, "active"};
}
inline FeatureId culture_association_column() {
    return {FeatureNamespace::culture, "association"};
}
inline FeatureId specimen_column() { return {FeatureNamespace::culture, "specimen"}; }
inline FeatureId uti_icd10_column() { return {FeatureNamespace::icd10, "N39.0"}; }

// Builds the base presence grid from normalized events. Point events mark
// their day, admission code columns fill entry..discharge, and monthly
// demographic flags broadcast to each day of their month. Output is
// independent of event order.
inline SparseDayTensor build_tensor(const EventSet& events, const StudyCalendar& calendar,
                                    const MappingTables& tables,
                                    UnmappedReport* unmapped = nullptr) {
    SparseDayTensor tensor(calendar, events.patients());
    auto& dict = tensor.dict();

    auto pid = [&](const PatientId& id) { return *tensor.patient_index(id); };

    for (const auto& ev : events.dispensations) {
        int p = pid(ev.patient);
        if (ev.drug_class == DrugClass::catheter_supply) {
            tensor.write(p, ev.day, dict.get_or_add({FeatureNamespace::catheter, ev.drug_name}), 1);
            continue;
        }
        tensor.write(p, ev.day, dict.get_or_add({FeatureNamespace::drug, ev.drug_name}), 1);
        if (ev.drug_class == DrugClass::antibiotic) {
            auto cat = classify_antibiotic(ev.drug_name, tables, unmapped);
            tensor.write(p, ev.day,
                         dict.get_or_add({FeatureNamespace::antibiotic_category,
                                          std::string("dispensed_") + to_string(cat)}),
                         1);
        }
    }

    for (const auto& ev : events.cultures) {
        int p = pid(ev.patient);
        tensor.write(p, ev.day,
                     dict.get_or_add({FeatureNamespace::culture, to_string(ev.result)}), 1);
        tensor.write(p, ev.day, dict.get_or_add(specimen_column()), 1);
        // Point-day association level; the extended stream is separate.
        auto level = classify_culture(ev, tables, unmapped);
        tensor.write(p, ev.day,
                     dict.get_or_add({FeatureNamespace::culture, "event_association"}),
                     static_cast<uint8_t>(level));
    }

    for (const auto& ev : events.asts) {
        int p = pid(ev.patient);
        auto merged = merge_susceptibility(ev.susceptibility);
        tensor.write(p, ev.day,
                     dict.get_or_add({FeatureNamespace::ast_pair,
                                      ev.organism + "|" + ev.antibiotic + "|" + to_string(merged)}),
                     1);
        auto level = classify_ast(ev, tables, unmapped);
        tensor.write(p, ev.day,
                     dict.get_or_add({FeatureNamespace::culture, "event_association"}),
                     static_cast<uint8_t>(level));
    }

    for (const auto& ev : events.admissions) {
        int p = pid(ev.patient);
        for (const auto& code : ev.icd10) {
            int col = dict.get_or_add({FeatureNamespace::icd10, code});
            tensor.write_span(p, col, ev.entry_day, ev.discharge_day, 1);
        }
        for (const auto& code : ev.opcs) {
            int col = dict.get_or_add({FeatureNamespace::opcs, code});
            tensor.write_span(p, col, ev.entry_day, ev.discharge_day, 1);
        }
    }

    for (const auto& snap : events.demographics) {
        int p = pid(snap.patient);
        auto [lo, hi] = calendar.month_day_span(snap.month);
        for (const auto& flag : snap.living) {
            int col = dict.get_or_add({FeatureNamespace::living, flag});
            tensor.write_span(p, col, lo, hi, 1);
        }
        for (const auto& flag : snap.comorbidity) {
            int col = dict.get_or_add({FeatureNamespace::comorbidity, flag});
            tensor.write_span(p, col, lo, hi, 1);
        }
        if (snap.sex == Sex::female)
            tensor.write_span(p, dict.get_or_add({FeatureNamespace::demographic, "sex_female"}),
                              lo, hi, 1);
    }

    return tensor;
}

} // namespace utirisk
