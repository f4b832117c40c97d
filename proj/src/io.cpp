#include "mzi/io.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace mzi {

std::string format_double(double x) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

std::string format_double_17(double x) {
  std::array<char, 64> buf{};
  const int len = std::snprintf(buf.data(), buf.size(), "%.17g", x);
  return std::string(buf.data(), static_cast<std::size_t>(len));
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp = target.string() + ".tmp";

  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open output file: " + tmp.string());
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("failed writing output file: " + tmp.string());
    }
  }

  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    std::error_code ec2;
    fs::remove(tmp, ec2);
    throw std::runtime_error("failed to rename output into place: " + target.string());
  }
}

std::string fringe_csv(const std::vector<FringePoint>& points) {
  std::string out = "phase,p_plus\n";
  for (const auto& pt : points) {
    out += format_double_17(pt.phase);
    out += ',';
    out += format_double_17(pt.p_plus);
    out += '\n';
  }
  return out;
}

std::string frontier_csv(const std::vector<FrontierPoint>& points) {
  std::string out = "efficiency,p_ww,p_wp\n";
  for (const auto& pt : points) {
    out += format_double(pt.e);
    out += ',';
    out += format_double(pt.p_ww);
    out += ',';
    out += format_double(pt.p_wp);
    out += '\n';
  }
  return out;
}

std::string trials_csv(const std::vector<TrialRecord>& records) {
  std::string out = "trial,b_ww,b_wp,port_bit,pol_bit,g_ww,g_wp\n";
  for (const auto& r : records) {
    out += std::to_string(r.trial);
    out += ',';
    out += std::to_string(static_cast<int>(r.b_ww));
    out += ',';
    out += std::to_string(static_cast<int>(r.b_wp));
    out += ',';
    out += std::to_string(static_cast<int>(r.port_bit));
    out += ',';
    out += std::to_string(static_cast<int>(r.pol_bit));
    out += ',';
    out += std::to_string(static_cast<int>(r.g_ww));
    out += ',';
    out += std::to_string(static_cast<int>(r.g_wp));
    out += '\n';
  }
  return out;
}

} // namespace mzi
