#include "csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "errors.hpp"

namespace spade {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Table::Table(std::vector<std::string> column_names) : names_(std::move(column_names)) {
    if (names_.empty()) throw ValidationError("Table: needs at least one column");
}

void Table::append_row(const std::vector<double>& row) {
    if (row.size() != names_.size())
        throw ValidationError("Table: row width does not match column count");
    data_.insert(data_.end(), row.begin(), row.end());
}

double Table::at(std::size_t row, std::size_t col) const {
    if (row >= rows() || col >= names_.size()) throw ValidationError("Table: index out of range");
    return data_[row * names_.size() + col];
}

std::size_t Table::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    throw ValidationError("Table: no column named '" + name + "'");
}

void Table::write_csv(std::ostream& out, const std::string& comment) const {
    if (!comment.empty()) out << "# " << comment << '\n';
    for (std::size_t i = 0; i < names_.size(); ++i)
        out << names_[i] << (i + 1 < names_.size() ? ',' : '\n');
    for (std::size_t r = 0; r < rows(); ++r)
        for (std::size_t c = 0; c < names_.size(); ++c)
            out << format_double(at(r, c)) << (c + 1 < names_.size() ? ',' : '\n');
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string tok;
    std::istringstream ss(line);
    while (std::getline(ss, tok, ',')) {
        const auto a = tok.find_first_not_of(" \t\r");
        const auto b = tok.find_last_not_of(" \t\r");
        out.push_back(a == std::string::npos ? std::string() : tok.substr(a, b - a + 1));
    }
    return out;
}

double parse_cell(const std::string& tok, std::size_t line_no) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw ParseError("trailing characters in '" + tok + "'", line_no);
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("cannot parse '" + tok + "' as a number", line_no);
    }
}

}  // namespace

Table Table::read_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        header = split_csv_line(line);
        break;
    }
    if (header.empty()) throw ParseError("empty CSV, no header found", line_no);
    Table t(header);
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos || line[0] == '#') continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != header.size())
            throw ParseError("expected " + std::to_string(header.size()) + " columns", line_no);
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) row.push_back(parse_cell(c, line_no));
        t.append_row(row);
    }
    return t;
}

void write_spectrum(std::ostream& out, const SpectrumRecord& rec) {
    rec.validate();
    out << "# units=" << units_tag(rec.units) << " n_avg=" << rec.n_avg << '\n';
    out << "freq_hz,psd\n";
    for (std::size_t i = 0; i < rec.frequency.size(); ++i)
        out << format_double(rec.frequency[i]) << ',' << format_double(rec.psd[i]) << '\n';
}

SpectrumRecord read_spectrum(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    SpectrumRecord rec;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.rfind("# units=", 0) == 0) {
            std::istringstream ss(line.substr(2));
            std::string tok;
            while (ss >> tok) {
                const auto eq = tok.find('=');
                if (eq == std::string::npos) continue;
                const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
                if (key == "units") rec.units = parse_units_tag(val);
                if (key == "n_avg") rec.n_avg = static_cast<int>(parse_cell(val, line_no));
            }
            continue;
        }
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            const auto cols = split_csv_line(line);
            if (cols.size() != 2 || cols[0] != "freq_hz")
                throw ParseError("expected 'freq_hz,psd' header", line_no);
            header_seen = true;
            continue;
        }
        const auto cells = split_csv_line(line);
        if (cells.size() != 2) throw ParseError("expected two columns", line_no);
        rec.frequency.push_back(parse_cell(cells[0], line_no));
        rec.psd.push_back(parse_cell(cells[1], line_no));
    }
    try {
        rec.validate();
    } catch (const ValidationError& e) {
        throw ParseError(e.what(), line_no);
    }
    return rec;
}

SpectrumRecord read_spectrum_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open spectrum file: " + path);
    return read_spectrum(in);
}

void write_ringdown(std::ostream& out, const RingdownRecord& rec) {
    rec.validate();
    out << "t_s,amplitude\n";
    for (std::size_t i = 0; i < rec.time.size(); ++i)
        out << format_double(rec.time[i]) << ',' << format_double(rec.amplitude[i]) << '\n';
}

RingdownRecord read_ringdown(std::istream& in) {
    Table t = Table::read_csv(in);
    const std::size_t ct = t.column_index("t_s");
    const std::size_t ca = t.column_index("amplitude");
    RingdownRecord rec;
    for (std::size_t r = 0; r < t.rows(); ++r) {
        rec.time.push_back(t.at(r, ct));
        rec.amplitude.push_back(t.at(r, ca));
    }
    rec.validate();
    return rec;
}

RingdownRecord read_ringdown_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open ringdown file: " + path);
    return read_ringdown(in);
}

std::vector<KnifeEdgePoint> read_knife_profile_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open knife-edge file: " + path);
    Table t = Table::read_csv(in);
    const std::size_t cx = t.column_index("position_m");
    const std::size_t cp = t.column_index("power_w");
    std::vector<KnifeEdgePoint> out;
    for (std::size_t r = 0; r < t.rows(); ++r) out.push_back({t.at(r, cx), t.at(r, cp)});
    return out;
}

std::vector<ShotScalingPoint> read_shot_series_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open shot series file: " + path);
    Table t = Table::read_csv(in);
    const std::size_t cp = t.column_index("power_w");
    const std::size_t cv = t.column_index("psd_v2_per_hz");
    std::vector<ShotScalingPoint> out;
    for (std::size_t r = 0; r < t.rows(); ++r) out.push_back({t.at(r, cp), t.at(r, cv)});
    return out;
}

std::vector<CouplingDataPoint> read_coupling_data_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open coupling data file: " + path);
    Table t = Table::read_csv(in);
    const std::size_t cx = t.column_index("x_m");
    const std::size_t c0 = t.column_index("eta00");
    const std::size_t c1 = t.column_index("eta10");
    std::vector<CouplingDataPoint> out;
    for (std::size_t r = 0; r < t.rows(); ++r)
        out.push_back({t.at(r, cx), t.at(r, c0), t.at(r, c1)});
    return out;
}

void Report::add(const std::string& key, double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", value);
    lines_.emplace_back(key, buf);
}

void Report::add_text(const std::string& key, const std::string& value) {
    lines_.emplace_back(key, value);
}

std::string Report::text() const {
    std::string out;
    for (const auto& [k, v] : lines_) {
        out += k;
        out += " = ";
        out += v;
        out += '\n';
    }
    return out;
}

double Report::value(const std::string& key) const {
    for (const auto& [k, v] : lines_)
        if (k == key) {
            try {
                return std::stod(v);
            } catch (const std::exception&) {
                throw ValidationError("Report: value of '" + key + "' is not numeric");
            }
        }
    throw ValidationError("Report: no key '" + key + "'");
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write file: " + path);
    out << content;
}

}  // namespace spade
