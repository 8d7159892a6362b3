// Ingest of the five line-delimited source files. Well-formed lines yield
// exactly one typed event; malformed lines are recorded with line number
// and reason, never silently dropped, so for every source
// data lines = parsed events + reported errors.
//
// Field orders (comma-delimited, one-line header, ISO-8601 dates,
// semicolon-joined sets) are documented in docs/file_formats.md.
#pragma once

#include <fstream>
#include <istream>
#include <string>
#include <vector>

#include "utirisk/calendar.hpp"
#include "utirisk/csv.hpp"
#include "utirisk/events.hpp"
#include "utirisk/normalize.hpp"

namespace utirisk {

enum class SourceKind { dispensations, urine_cultures, ast_results, admissions, demographics };

inline const char* to_string(SourceKind k) {
    switch (k) {
        case SourceKind::dispensations: return "dispensations";
        case SourceKind::urine_cultures: return "urine_cultures";
        case SourceKind::ast_results: return "ast_results";
        case SourceKind::admissions: return "admissions";
        case SourceKind::demographics: return "demographics";
    }
    return "?";
}

inline const char* expected_header(SourceKind k) {
    switch (k) {
        case SourceKind::dispensations:
            return "patient_id,date,drug_name,dosage_mg,quantity,drug_class,route";
        case SourceKind::urine_cultures:
            return "patient_id,date,result,organism,specimen_source";
        case SourceKind::ast_results:
            return "patient_id,date,organism,antibiotic,susceptibility,specimen_source";
        case SourceKind::admissions:
            return "patient_id,entry_date,discharge_date,icd10_codes,opcs_codes";
        case SourceKind::demographics:
            return "patient_id,month,age,sex,death_date,living_flags,comorbidity_flags,lsoa";
    }
    return "";
}

struct ParseError {
    std::string file;
    int line = 0;
    std::string reason;
};

struct ParseReport {
    std::vector<ParseError> errors;
    long parsed = 0;
    long data_lines = 0;
    long out_of_range = 0;     // point events / months outside the calendar
    long clipped_admissions = 0;

    void add_error(const std::string& file, int line, std::string reason) {
        errors.push_back(ParseError{file, line, std::move(reason)});
    }

    void write(std::ostream& out) const {
        out << "file,line,reason\n";
        for (const auto& e : errors)
            out << e.file << ',' << e.line << ',' << e.reason << '\n';
    }
};

namespace detail {

inline std::set<std::string> parse_code_set(const std::string& field) {
    std::set<std::string> out;
    if (field.empty()) return out;
    for (auto& tok : split_fields(field, kSetDelim)) {
        std::string t = normalize_token(tok);
        std::transform(t.begin(), t.end(), t.begin(),
                       [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
        if (!t.empty()) out.insert(t);
    }
    return out;
}

inline bool parse_flag_set(const std::string& field, const std::vector<std::string>& allowed,
                           std::set<std::string>& out, std::string& bad) {
    if (field.empty()) return true;
    for (auto& tok : split_fields(field, kSetDelim)) {
        std::string t = normalize_token(tok);
        if (t.empty()) continue;
        if (std::find(allowed.begin(), allowed.end(), t) == allowed.end()) {
            bad = t;
            return false;
        }
        out.insert(t);
    }
    return true;
}

} // namespace detail

// Parses one source stream into `events`, appending problems to `report`.
inline void parse_events(std::istream& in, SourceKind kind, const StudyCalendar& calendar,
                         const MappingTables& tables, EventSet& events, ParseReport& report,
                         const std::string& filename = "<stream>",
                         UnmappedReport* unmapped = nullptr) {
    DelimitedReader reader(in);
    if (join_fields(reader.header()) != expected_header(kind) && !reader.header().empty())
        report.add_error(filename, 1, "unexpected header; expected: " + std::string(expected_header(kind)));

    const size_t want = split_fields(expected_header(kind)).size();
    std::vector<std::string> f;
    int line_no = 0;
    while (reader.next(f, line_no)) {
        ++report.data_lines;
        if (f.size() == 1 && f[0].empty()) {
            report.add_error(filename, line_no, "empty line");
            continue;
        }
        if (f.size() != want) {
            report.add_error(filename, line_no, "expected " + std::to_string(want) +
                                                    " fields; got " + std::to_string(f.size()));
            continue;
        }
        if (f[0].empty()) {
            report.add_error(filename, line_no, "empty patient id");
            continue;
        }

        auto day_of = [&](const std::string& s) -> std::optional<int> {
            auto d = parse_date(s);
            if (!d) return std::nullopt;
            return calendar.day_index(*d);
        };

        switch (kind) {
            case SourceKind::dispensations: {
                auto date = parse_date(f[1]);
                if (!date) { report.add_error(filename, line_no, "bad date: " + f[1]); break; }
                auto day = calendar.day_index(*date);
                if (!day) {
                    report.add_error(filename, line_no, "date outside study period: " + f[1]);
                    ++report.out_of_range;
                    break;
                }
                double dosage;
                int64_t quantity;
                if (!parse_double(f[3], dosage) || dosage < 0) {
                    report.add_error(filename, line_no, "bad dosage_mg: " + f[3]);
                    break;
                }
                if (!parse_int(f[4], quantity) || quantity <= 0) {
                    report.add_error(filename, line_no, "bad quantity: " + f[4]);
                    break;
                }
                auto cls = drug_class_from(f[5]);
                if (!cls) { report.add_error(filename, line_no, "unknown drug_class: " + f[5]); break; }
                auto route = route_from(f[6]);
                if (!route) { report.add_error(filename, line_no, "unknown route: " + f[6]); break; }
                events.dispensations.push_back(DispensationEvent{
                    f[0], *day, normalize_token(f[2]), dosage, static_cast<int>(quantity), *cls, *route});
                ++report.parsed;
                break;
            }
            case SourceKind::urine_cultures: {
                auto day = day_of(f[1]);
                if (!parse_date(f[1])) { report.add_error(filename, line_no, "bad date: " + f[1]); break; }
                if (!day) {
                    report.add_error(filename, line_no, "date outside study period: " + f[1]);
                    ++report.out_of_range;
                    break;
                }
                auto result = culture_result_from(f[2]);
                if (!result) { report.add_error(filename, line_no, "unknown result: " + f[2]); break; }
                std::string organism = normalize_token(f[3]);
                if (!organism.empty() && !implies_growth(*result)) {
                    report.add_error(filename, line_no,
                                     "organism given for non-growth result: " + f[2]);
                    break;
                }
                events.cultures.push_back(UrineCultureEvent{
                    f[0], *day, *result, organism,
                    standardize_specimen_source(f[4], tables, unmapped)});
                ++report.parsed;
                break;
            }
            case SourceKind::ast_results: {
                auto day = day_of(f[1]);
                if (!parse_date(f[1])) { report.add_error(filename, line_no, "bad date: " + f[1]); break; }
                if (!day) {
                    report.add_error(filename, line_no, "date outside study period: " + f[1]);
                    ++report.out_of_range;
                    break;
                }
                std::string organism = normalize_token(f[2]);
                if (organism.empty()) { report.add_error(filename, line_no, "empty organism"); break; }
                auto susc = susceptibility_from(f[4]);
                if (!susc) { report.add_error(filename, line_no, "unknown susceptibility: " + f[4]); break; }
                events.asts.push_back(AstResultEvent{
                    f[0], *day, organism, normalize_token(f[3]), *susc,
                    standardize_specimen_source(f[5], tables, unmapped)});
                ++report.parsed;
                break;
            }
            case SourceKind::admissions: {
                auto entry = parse_date(f[1]);
                auto discharge = parse_date(f[2]);
                if (!entry) { report.add_error(filename, line_no, "bad entry_date: " + f[1]); break; }
                if (!discharge) { report.add_error(filename, line_no, "bad discharge_date: " + f[2]); break; }
                if (*discharge < *entry) {
                    report.add_error(filename, line_no, "discharge before entry");
                    break;
                }
                // Intervals straddling the calendar edges are clipped;
                // fully outside intervals are rejected.
                auto sd = detail::to_sys_days(*entry) - detail::to_sys_days(calendar.start());
                auto ed = detail::to_sys_days(*discharge) - detail::to_sys_days(calendar.start());
                long e0 = sd.count(), e1 = ed.count();
                if (e1 < 0 || e0 >= calendar.days()) {
                    report.add_error(filename, line_no, "stay outside study period");
                    ++report.out_of_range;
                    break;
                }
                bool clipped = e0 < 0 || e1 >= calendar.days();
                int entry_day = static_cast<int>(std::max(0L, e0));
                int discharge_day = static_cast<int>(std::min<long>(calendar.days() - 1, e1));
                if (clipped) ++report.clipped_admissions;
                events.admissions.push_back(AdmissionEvent{f[0], entry_day, discharge_day,
                                                           detail::parse_code_set(f[3]),
                                                           detail::parse_code_set(f[4])});
                ++report.parsed;
                break;
            }
            case SourceKind::demographics: {
                int y, m;
                char extra;
                if (std::sscanf(f[1].c_str(), "%d-%d%c", &y, &m, &extra) != 2 || m < 1 || m > 12) {
                    report.add_error(filename, line_no, "bad month: " + f[1]);
                    break;
                }
                auto month = calendar.month_index(y, m);
                if (!month) {
                    report.add_error(filename, line_no, "month outside study period: " + f[1]);
                    ++report.out_of_range;
                    break;
                }
                int64_t age;
                if (!parse_int(f[2], age) || age < 0) {
                    report.add_error(filename, line_no, "bad age: " + f[2]);
                    break;
                }
                auto sex = sex_from(f[3]);
                if (!sex) { report.add_error(filename, line_no, "unknown sex: " + f[3]); break; }
                std::optional<Date> death;
                if (!f[4].empty()) {
                    death = parse_date(f[4]);
                    if (!death) { report.add_error(filename, line_no, "bad death_date: " + f[4]); break; }
                }
                DemographicSnapshot snap;
                snap.patient = f[0];
                snap.month = *month;
                snap.age = static_cast<int>(age);
                snap.sex = *sex;
                snap.death = death;
                snap.lsoa = f[7];
                std::string bad;
                if (!detail::parse_flag_set(f[5], living_flag_names(), snap.living, bad)) {
                    report.add_error(filename, line_no, "unknown living flag: " + bad);
                    break;
                }
                if (!detail::parse_flag_set(f[6], comorbidity_flag_names(), snap.comorbidity, bad)) {
                    report.add_error(filename, line_no, "unknown comorbidity flag: " + bad);
                    break;
                }
                events.demographics.push_back(std::move(snap));
                ++report.parsed;
                break;
            }
        }
    }
}

// Opens and parses one file; an unreadable file is fatal.
inline void parse_file(const std::string& path, SourceKind kind, const StudyCalendar& calendar,
                       const MappingTables& tables, EventSet& events, ParseReport& report,
                       UnmappedReport* unmapped = nullptr) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    parse_events(in, kind, calendar, tables, events, report, path, unmapped);
}

} // namespace utirisk
