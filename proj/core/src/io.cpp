#include "qruler/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qruler/error.hpp"

namespace qruler::io {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", value);
  return buf;
}

namespace {

void row(std::ostringstream& os, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) os << ',';
    os << format_double(v);
    first = false;
  }
  os << '\n';
}

}  // namespace

std::string probe_csv(const PureProbe& probe) {
  std::ostringstream os;
  os << "g,re,im\n";
  const auto psi = probe.amplitudes();
  for (std::size_t i = 0; i < psi.size(); ++i) {
    row(os, {probe.grid().at(i), psi[i].real(), psi[i].imag()});
  }
  return os.str();
}

std::string coherence_csv(const CoherenceFunction& gamma) {
  std::ostringstream os;
  os << "tau,re,im\n";
  for (std::size_t j = 0; j < gamma.size(); ++j) {
    row(os, {gamma.tau(j), gamma.values()[j].real(), gamma.values()[j].imag()});
  }
  return os.str();
}

std::string distribution_csv(const OutcomeDistribution& p) {
  std::ostringstream os;
  const auto d = p.density();
  if (!p.joint()) {
    os << "mu,p\n";
    for (std::size_t i = 0; i < d.size(); ++i) row(os, {p.mu()[i], d[i]});
    return os.str();
  }
  os << "m,k,p\n";
  const std::size_t nk = p.k().size();
  for (std::size_t i = 0; i < d.size(); ++i) row(os, {p.mu()[i / nk], p.k()[i % nk], d[i]});
  return os.str();
}

std::string curve_csv(const BudgetCurve& curve) {
  std::ostringstream os;
  os << "s,value\n";
  for (std::size_t i = 0; i < curve.s.size(); ++i) row(os, {curve.s[i], curve.value[i]});
  return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + path.parent_path().string() + ": " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out << contents;
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "write to " + path.string() + " failed");
}

}  // namespace qruler::io
