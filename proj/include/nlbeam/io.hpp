#pragma once

// CSV / JSON / PGM emitters. Numeric CSV output uses 17 significant digits so
// identical configs produce byte-identical files.

#include <string>
#include <vector>

namespace nlbeam::io {

inline constexpr const char* VERSION = "0.1.0";

/// Rows of doubles under named columns, preceded by '#' provenance lines.
void write_csv(const std::string& path, const std::vector<std::string>& provenance,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows);

void write_text(const std::string& path, const std::string& content);

/// Binary PGM (P5) bitmap; pixels are 0 (nonzero entry) or 255 (zero entry).
void write_pgm(const std::string& path, int width, int height,
               const std::vector<unsigned char>& pixels);

/// Standard provenance block: version line plus config echo lines.
std::vector<std::string> provenance(const std::vector<std::string>& config_echo);

/// Create the directory if needed and join a filename onto it.
std::string join_outdir(const std::string& dir, const std::string& filename);

}  // namespace nlbeam::io
