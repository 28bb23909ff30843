// io.cpp — Output helpers.

#include "rcpt/app/io.hpp"

#include <charconv>
#include <cmath>

namespace rcpt::app {

void ensure_directory(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir))
        throw IoError("cannot create output directory " + dir.string() + (ec ? ": " + ec.message() : ""));
}

void write_text(const std::filesystem::path& file, const std::string& text) {
    std::ofstream out(file);
    if (!out) throw IoError("cannot write " + file.string());
    out << text;
    if (!out) throw IoError("write failed for " + file.string());
}

void write_json(const std::filesystem::path& file, const nlohmann::json& doc) {
    write_text(file, doc.dump(2) + "\n");
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& file, const std::vector<std::string>& header)
    : path_(file), out_(file), columns_(header.size()) {
    if (!out_) throw IoError("cannot write " + file.string());
    for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
    out_ << '\n' << std::flush;
}

CsvWriter& CsvWriter::cell(double x) { return cell(format_number(x)); }

CsvWriter& CsvWriter::cell(const std::string& s) {
    out_ << (pending_ ? "," : "") << s;
    ++pending_;
    return *this;
}

void CsvWriter::end_row() {
    if (pending_ != columns_)
        throw std::logic_error("CSV row for " + path_.string() + " has " + std::to_string(pending_) + " cells, expected " +
                               std::to_string(columns_));
    out_ << '\n' << std::flush;
    pending_ = 0;
    if (!out_) throw IoError("write failed for " + path_.string());
}

void CsvWriter::row(std::initializer_list<double> values) {
    for (double v : values) cell(v);
    end_row();
}

} // namespace rcpt::app
