#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "calibration.hpp"
#include "spectra.hpp"

namespace spade {

// Column table backing every CSV the toolkit emits. Values are formatted with
// %.17g so identical runs produce byte-identical bodies.
class Table {
public:
    explicit Table(std::vector<std::string> column_names);

    const std::vector<std::string>& columns() const { return names_; }
    std::size_t rows() const { return names_.empty() ? 0 : data_.size() / names_.size(); }
    void append_row(const std::vector<double>& row);
    double at(std::size_t row, std::size_t col) const;
    std::size_t column_index(const std::string& name) const;  // throws if absent

    void write_csv(std::ostream& out, const std::string& comment = {}) const;
    static Table read_csv(std::istream& in);

private:
    std::vector<std::string> names_;
    std::vector<double> data_;  // row-major
};

std::string format_double(double v);

// Spectrum CSV: "# units=<tag> n_avg=<k>" header then freq_hz,psd rows.
void write_spectrum(std::ostream& out, const SpectrumRecord& rec);
SpectrumRecord read_spectrum(std::istream& in);
SpectrumRecord read_spectrum_file(const std::string& path);

void write_ringdown(std::ostream& out, const RingdownRecord& rec);
RingdownRecord read_ringdown(std::istream& in);
RingdownRecord read_ringdown_file(const std::string& path);

std::vector<KnifeEdgePoint> read_knife_profile_file(const std::string& path);
std::vector<ShotScalingPoint> read_shot_series_file(const std::string& path);
std::vector<CouplingDataPoint> read_coupling_data_file(const std::string& path);

// key = value report emitted by every command.
class Report {
public:
    void add(const std::string& key, double value);
    void add_text(const std::string& key, const std::string& value);
    std::string text() const;
    double value(const std::string& key) const;  // throws if absent/non-numeric
    const std::vector<std::pair<std::string, std::string>>& lines() const { return lines_; }

private:
    std::vector<std::pair<std::string, std::string>> lines_;
};

void write_text_file(const std::string& path, const std::string& content);

}  // namespace spade
