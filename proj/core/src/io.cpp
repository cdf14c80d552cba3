#include "birk/io.hpp"

namespace birk {

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hash_hex(std::uint64_t h) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

void write_pgm(const std::string& path, std::size_t width, std::size_t height,
               const std::vector<unsigned char>& pixels) {
    if (pixels.size() != width * height)
        throw contract_error("pixel buffer does not match image size");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw contract_error("cannot open image file: " + path);
    out << "P5\n" << width << " " << height << "\n255\n";
    out.write(reinterpret_cast<const char*>(pixels.data()),
              static_cast<std::streamsize>(pixels.size()));
}

CsvWriter::CsvWriter(const std::string& path,
                     const std::vector<std::string>& header_lines,
                     const std::string& columns)
    : out_(path) {
    if (!out_) throw contract_error("cannot open output file: " + path);
    for (const auto& l : header_lines) out_ << "# " << l << "\n";
    out_ << columns << "\n";
}

void CsvWriter::row(const std::string& cells) { out_ << cells << "\n"; }

CsvWriter::~CsvWriter() = default;

} // namespace birk
