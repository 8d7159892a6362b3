// Study calendar: maps calendar dates to day indices over the study
// period. Both endpoints are inclusive, so the default period
// 2019-10-01..2022-07-01 spans exactly 1005 day indices (0..1004).
#pragma once

#include <chrono>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace utirisk {

struct Date {
    int year = 0;
    int month = 0; // 1..12
    int day = 0;   // 1..31

    auto operator<=>(const Date&) const = default;
};

inline bool valid_date(const Date& d) {
    if (d.month < 1 || d.month > 12 || d.day < 1) return false;
    std::chrono::year_month_day ymd{std::chrono::year{d.year},
                                    std::chrono::month{static_cast<unsigned>(d.month)},
                                    std::chrono::day{static_cast<unsigned>(d.day)}};
    return ymd.ok();
}

inline std::optional<Date> parse_date(std::string_view s) {
    Date d;
    char extra;
    if (std::sscanf(std::string(s).c_str(), "%d-%d-%d%c", &d.year, &d.month, &d.day, &extra) != 3)
        return std::nullopt;
    if (!valid_date(d)) return std::nullopt;
    return d;
}

inline std::string format_date(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

namespace detail {
inline std::chrono::sys_days to_sys_days(const Date& d) {
    return std::chrono::sys_days{std::chrono::year_month_day{
        std::chrono::year{d.year}, std::chrono::month{static_cast<unsigned>(d.month)},
        std::chrono::day{static_cast<unsigned>(d.day)}}};
}

inline Date from_sys_days(std::chrono::sys_days sd) {
    std::chrono::year_month_day ymd{sd};
    return Date{int(ymd.year()), int(unsigned(ymd.month())), int(unsigned(ymd.day()))};
}
} // namespace detail

class StudyCalendar {
public:
    StudyCalendar(Date start, Date end) : start_(start), end_(end) {
        if (!valid_date(start) || !valid_date(end))
            throw std::invalid_argument("calendar: invalid date");
        if (end < start)
            throw std::invalid_argument("calendar: end before start");
        days_ = static_cast<int>((detail::to_sys_days(end) - detail::to_sys_days(start)).count()) + 1;
        start_month_ = start.year * 12 + (start.month - 1);
        months_ = end.year * 12 + (end.month - 1) - start_month_ + 1;
    }

    static StudyCalendar default_study_period() {
        return StudyCalendar{Date{2019, 10, 1}, Date{2022, 7, 1}};
    }

    const Date& start() const { return start_; }
    const Date& end() const { return end_; }
    int days() const { return days_; }
    int months() const { return months_; }

    bool contains_day(int day) const { return day >= 0 && day < days_; }

    // Out-of-range dates map to nullopt; this is a value, not a fault.
    std::optional<int> day_index(const Date& d) const {
        if (!valid_date(d)) return std::nullopt;
        auto diff = (detail::to_sys_days(d) - detail::to_sys_days(start_)).count();
        if (diff < 0 || diff >= days_) return std::nullopt;
        return static_cast<int>(diff);
    }

    Date date_at(int day) const {
        if (!contains_day(day)) throw std::out_of_range("calendar: day index out of range");
        return detail::from_sys_days(detail::to_sys_days(start_) + std::chrono::days{day});
    }

    // Month index 0 = the start date's calendar month.
    std::optional<int> month_index(int year, int month) const {
        int m = year * 12 + (month - 1) - start_month_;
        if (m < 0 || m >= months_) return std::nullopt;
        return m;
    }

    int month_of_day(int day) const {
        Date d = date_at(day);
        return d.year * 12 + (d.month - 1) - start_month_;
    }

    // First and last day index of a calendar month, clipped to the period.
    std::pair<int, int> month_day_span(int month_idx) const {
        if (month_idx < 0 || month_idx >= months_)
            throw std::out_of_range("calendar: month index out of range");
        int abs_month = start_month_ + month_idx;
        Date first{abs_month / 12, abs_month % 12 + 1, 1};
        std::chrono::year_month_day_last last_ymd{
            std::chrono::year{first.year},
            std::chrono::month_day_last{std::chrono::month{static_cast<unsigned>(first.month)}}};
        Date last{first.year, first.month, int(unsigned(last_ymd.day()))};
        auto lo = (detail::to_sys_days(first) - detail::to_sys_days(start_)).count();
        auto hi = (detail::to_sys_days(last) - detail::to_sys_days(start_)).count();
        int clipped_lo = std::max<int>(0, static_cast<int>(lo));
        int clipped_hi = std::min<int>(days_ - 1, static_cast<int>(hi));
        return {clipped_lo, clipped_hi};
    }

    bool operator==(const StudyCalendar& o) const {
        return start_ == o.start_ && end_ == o.end_;
    }

private:
    Date start_;
    Date end_;
    int days_ = 0;
    int start_month_ = 0;
    int months_ = 0;
};

} // namespace utirisk
