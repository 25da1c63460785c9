#ifndef PITCHGUARD_TYPES_HPP
#define PITCHGUARD_TYPES_HPP

#include <map>
#include <string>
#include <vector>

namespace pitchguard {

// One day of a subject's exposure record.
struct ExposureDay {
    int day_index = 0; // 1-based
    double training_minutes = 0.0;
    double match_minutes = 0.0;

    bool operator==(const ExposureDay&) const = default;
};

struct Outcome {
    enum class Kind { Injured, Censored };
    Kind kind = Kind::Censored;
    int day = 0; // day of injury, or last observed day

    static Outcome injured(int day) { return {Kind::Injured, day}; }
    static Outcome censored(int last_day) { return {Kind::Censored, last_day}; }
    bool is_injured() const { return kind == Kind::Injured; }

    bool operator==(const Outcome&) const = default;
};

// Per-subject exposure time series; after preprocessing, day_index runs
// 1..N contiguously.
struct ExposureRecord {
    std::string subject_id;
    std::vector<ExposureDay> days;
    Outcome outcome;

    int last_day() const { return days.empty() ? 0 : days.back().day_index; }
    std::vector<double> training_series() const;
    std::vector<double> match_series() const;

    bool operator==(const ExposureRecord&) const = default;
};

struct InjuryEvent {
    std::string subject_id;
    int day = 0;
    bool intrinsic = false;
    int days_unavailable = 0;

    bool operator==(const InjuryEvent&) const = default;
};

// Proleptic Gregorian calendar day; used for GPS session dates.
struct CalendarDate {
    int year = 1970;
    int month = 1; // 1..12
    int day = 1;   // 1..31

    static CalendarDate parse(const std::string& iso, std::size_t line = 0);
    std::string to_string() const;
    long serial() const; // days since 1970-01-01
    static CalendarDate from_serial(long serial);
    int iso_weekday() const; // Mon=1..Sun=7

    // iso_year * 100 + iso_week; totally ordered across year boundaries.
    int iso_week_index() const;

    bool operator==(const CalendarDate&) const = default;
    auto operator<=>(const CalendarDate& o) const { return serial() <=> o.serial(); }
};

struct GpsSession {
    std::string subject_id;
    CalendarDate date;
    double duration_minutes = 0.0;
    // Named measurements; includes duration_minutes as a feature. The name
    // set is identical across all sessions of one table.
    std::map<std::string, double> features;

    bool operator==(const GpsSession&) const = default;
};

struct WeeklyRow {
    std::string subject_id;
    int iso_week_index = 0;
    std::vector<double> features; // aligned with WeeklyFrame::feature_names
    bool injured = false;

    bool operator==(const WeeklyRow&) const = default;
};

// Per-subject-per-week mean-aggregated feature table with injury labels.
struct WeeklyFrame {
    std::vector<std::string> feature_names;
    std::vector<WeeklyRow> rows;

    bool operator==(const WeeklyFrame&) const = default;
};

enum class SeverityCategory { Transient, Mild, Moderate, Severe };

const char* to_string(SeverityCategory s);

} // namespace pitchguard

#endif
