#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sirmeta {

// Minimal CSV writer.  Numbers go through std::to_chars (shortest round-trip
// form), so output is locale-independent and bit-stable across runs.
class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path) : path_(path), out_(path) {
        if (!out_) throw std::runtime_error("csv: cannot open '" + path + "' for writing");
    }

    void header(const std::vector<std::string>& names) { row_strings(names); }

    CsvWriter& field(const std::string& s) {
        sep();
        line_ += s;
        return *this;
    }
    CsvWriter& field(double v) {
        char buf[32];
        const auto res = std::to_chars(buf, buf + sizeof(buf), v);
        sep();
        line_.append(buf, res.ptr);
        return *this;
    }
    CsvWriter& field(std::uint64_t v) {
        char buf[24];
        const auto res = std::to_chars(buf, buf + sizeof(buf), v);
        sep();
        line_.append(buf, res.ptr);
        return *this;
    }

    void end_row() {
        line_ += '\n';
        out_ << line_;
        line_.clear();
        first_ = true;
        if (!out_) throw std::runtime_error("csv: write failure on '" + path_ + "'");
    }

    const std::string& path() const { return path_; }

  private:
    void sep() {
        if (!first_) line_ += ',';
        first_ = false;
    }
    void row_strings(const std::vector<std::string>& names) {
        for (const auto& n : names) field(n);
        end_row();
    }

    std::string path_;
    std::ofstream out_;
    std::string line_;
    bool first_ = true;
};

} // namespace sirmeta
