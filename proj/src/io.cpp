#include "nlbeam/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace nlbeam::io {

void write_csv(const std::string& path, const std::vector<std::string>& provenance,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    for (const auto& line : provenance) std::fprintf(f, "# %s\n", line.c_str());
    for (size_t c = 0; c < columns.size(); ++c)
        std::fprintf(f, "%s%s", columns[c].c_str(), c + 1 < columns.size() ? "," : "\n");
    for (const auto& row : rows) {
        for (size_t c = 0; c < row.size(); ++c)
            std::fprintf(f, "%.17g%s", row[c], c + 1 < row.size() ? "," : "\n");
    }
    std::fclose(f);
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << content;
}

void write_pgm(const std::string& path, int width, int height,
               const std::vector<unsigned char>& pixels) {
    if (pixels.size() != static_cast<size_t>(width) * height)
        throw std::runtime_error("write_pgm: pixel buffer size mismatch");
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << "P5\n" << width << " " << height << "\n255\n";
    f.write(reinterpret_cast<const char*>(pixels.data()), pixels.size());
}

std::vector<std::string> provenance(const std::vector<std::string>& config_echo) {
    std::vector<std::string> lines;
    lines.push_back(std::string("nlbeam ") + VERSION);
    for (const auto& l : config_echo) lines.push_back("config: " + l);
    return lines;
}

std::string join_outdir(const std::string& dir, const std::string& filename) {
    std::filesystem::create_directories(dir);
    return (std::filesystem::path(dir) / filename).string();
}

}  // namespace nlbeam::io
