#pragma once

#include <string>
#include <vector>

namespace treelane::harness {

// Plain-text column alignment: first row is the header, separated from the
// body by dashes. Cells are left-aligned and padded with two spaces between
// columns.
inline std::string render_table(const std::vector<std::vector<std::string>>& rows) {
  if (rows.empty()) return "";
  std::vector<size_t> widths;
  for (const auto& row : rows) {
    if (row.size() > widths.size()) widths.resize(row.size(), 0);
    for (size_t c = 0; c < row.size(); ++c) {
      widths[c] = std::max(widths[c], row[c].size());
    }
  }
  std::string out;
  auto emit_row = [&](const std::vector<std::string>& row) {
    for (size_t c = 0; c < row.size(); ++c) {
      out += row[c];
      if (c + 1 < row.size()) out.append(widths[c] - row[c].size() + 2, ' ');
    }
    out += '\n';
  };
  emit_row(rows[0]);
  size_t total = 0;
  for (size_t c = 0; c < widths.size(); ++c) total += widths[c] + (c + 1 < widths.size() ? 2 : 0);
  out.append(total, '-');
  out += '\n';
  for (size_t r = 1; r < rows.size(); ++r) emit_row(rows[r]);
  return out;
}

}  // namespace treelane::harness
