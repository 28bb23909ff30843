// io.hpp — Output directory, CSV and JSON writers for the command-line tool.
#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace rcpt::app {

// File-system failure; the message always names the path.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void ensure_directory(const std::filesystem::path& dir);
void write_json(const std::filesystem::path& file, const nlohmann::json& doc);
void write_text(const std::filesystem::path& file, const std::string& text);

// Shortest round-trip decimal form; "inf"/"-inf"/"nan" for non-finite values.
std::string format_number(double x);

// Row-at-a-time CSV writer. Every row is flushed so an interrupted run keeps
// what it has written.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& file, const std::vector<std::string>& header);

    CsvWriter& cell(double x);
    CsvWriter& cell(const std::string& s);
    void end_row();
    void row(std::initializer_list<double> values);

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
    std::ofstream out_;
    std::size_t columns_;
    std::size_t pending_{0};
};

} // namespace rcpt::app
