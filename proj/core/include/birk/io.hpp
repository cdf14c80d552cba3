#pragma once

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "birk/errors.hpp"
#include "birk/trajectory.hpp"

namespace birk {

/// FNV-1a of the canonical config string; stamped into file headers so a
/// result can be traced to the exact job that produced it.
std::uint64_t fnv1a64(const std::string& s);

std::string hash_hex(std::uint64_t h);

/// Fixed scientific format with the mode's round-trip digit count. Used for
/// every number in exported files so identical jobs give identical bytes.
template <class R>
std::string format_real(const R& v) {
    std::ostringstream os;
    os << std::scientific
       << std::setprecision(precision_traits<R>::print_digits - 1) << v;
    return os.str();
}

/// 8-bit grayscale P5 image, rows written top to bottom.
void write_pgm(const std::string& path, std::size_t width, std::size_t height,
               const std::vector<unsigned char>& pixels);

class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header_lines,
              const std::string& columns);
    void row(const std::string& cells);
    ~CsvWriter();

private:
    std::ofstream out_;
};

template <class R>
void write_trajectory_csv(const std::string& path, const Trajectory<R>& t,
                          const std::vector<std::string>& header_lines) {
    CsvWriter w(path, header_lines, "n,x,y");
    for (std::size_t i = 0; i < t.size(); ++i)
        w.row(std::to_string(i) + "," + format_real(t[i].x) + "," + format_real(t[i].y));
}

/// Read `n,x,y` rows; `#`-prefixed lines and the column header are skipped.
template <class R>
Trajectory<R> read_trajectory_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw contract_error("cannot open trajectory file: " + path);
    Trajectory<R> t;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!line.empty() && (line[0] == 'n' || line[0] == 'N')) continue;
        std::istringstream ls(line);
        std::string cell;
        std::getline(ls, cell, ',');  // index column, unused
        Vec2<R> p;
        if (!std::getline(ls, cell, ',')) throw contract_error("bad CSV row: " + line);
        p.x = from_decimal<R>(cell);
        if (!std::getline(ls, cell, ',')) throw contract_error("bad CSV row: " + line);
        p.y = from_decimal<R>(cell);
        t.pts.push_back(p);
    }
    t.meta.system = "csv";
    t.meta.n = t.pts.size();
    t.meta.mode = precision_traits<R>::mode;
    return t;
}

} // namespace birk
