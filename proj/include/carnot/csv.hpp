#ifndef CARNOT_CSV_HPP
#define CARNOT_CSV_HPP

#include <string>
#include <vector>

namespace carnot {

/// A numeric table preceded by one comment row holding the producing config.
struct CsvTable
{
  std::string config;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Shortest round-trip representation; identical bits give identical text.
std::string format_double(double v);
std::string render_csv(const CsvTable& table);
/// Writes through a sibling temp file and renames it into place; throws IoError.
void write_csv_atomic(const std::string& path, const CsvTable& table);
void write_text_atomic(const std::string& path, const std::string& text);

} // namespace carnot

#endif // CARNOT_CSV_HPP
