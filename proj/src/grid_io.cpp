#include "ineq/grid_io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "ineq/errors.hpp"

namespace ineq {

namespace {

std::string fmt17(Real v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::map<std::string, std::string> parse_header(const std::string& line) {
  std::map<std::string, std::string> kv;
  std::istringstream iss(line);
  std::string tok;
  while (iss >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos)
      throw config_error("grid file: malformed header token '" + tok + "'");
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return kv;
}

}  // namespace

void save_grid(const std::string& path, const RadialFunction& f) {
  std::ofstream out(path);
  if (!out) throw config_error("save_grid: cannot open " + path);
  out << "kind=radial d=" << f.d << " n=" << f.r.size() << " cols=r,value\n";
  for (Index i = 0; i < f.r.size(); ++i)
    out << fmt17(f.r[i]) << ' ' << fmt17(f.values[i]) << '\n';
}

void save_grid(const std::string& path, const AxiSymFunction& f) {
  std::ofstream out(path);
  if (!out) throw config_error("save_grid: cannot open " + path);
  out << "kind=axisym d=" << f.d << " ns=" << f.s.size()
      << " nt=" << f.t.size() << " cols=s,t,value\n";
  for (Index i = 0; i < f.s.size(); ++i)
    for (Index j = 0; j < f.t.size(); ++j)
      out << fmt17(f.s[i]) << ' ' << fmt17(f.t[j]) << ' '
          << fmt17(f.values(i, j)) << '\n';
}

void save_grid(const std::string& path, const GaussianFunction& f) {
  std::ofstream out(path);
  if (!out) throw config_error("save_grid: cannot open " + path);
  out << "kind=gaussian N=" << f.grid->dim()
      << " n=" << f.grid->points_per_axis() << " cols=x,value\n";
  for (Index q = 0; q < f.grid->size(); ++q) {
    for (int k = 0; k < f.grid->dim(); ++k)
      out << fmt17(f.grid->node(q, k)) << ' ';
    out << fmt17(f.values[q]) << '\n';
  }
}

RadialFunction load_radial(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("load_radial: cannot open " + path);
  std::string header;
  std::getline(in, header);
  auto kv = parse_header(header);
  if (kv["kind"] != "radial")
    throw config_error("load_radial: wrong kind in " + path);
  RadialFunction f;
  f.d = std::stoi(kv.at("d"));
  const Index n = std::stol(kv.at("n"));
  f.r.resize(n);
  f.values.resize(n);
  for (Index i = 0; i < n; ++i)
    if (!(in >> f.r[i] >> f.values[i]))
      throw config_error("load_radial: truncated data in " + path);
  return f;
}

GaussianFunction load_gaussian(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("load_gaussian: cannot open " + path);
  std::string header;
  std::getline(in, header);
  auto kv = parse_header(header);
  if (kv["kind"] != "gaussian")
    throw config_error("load_gaussian: wrong kind in " + path);
  const int N = std::stoi(kv.at("N"));
  const int n = std::stoi(kv.at("n"));
  GaussianGridPtr grid = build_gaussian_grid(N, n);
  Vector values(grid->size());
  Real coord;
  for (Index q = 0; q < grid->size(); ++q) {
    for (int k = 0; k < N; ++k) in >> coord;
    if (!(in >> values[q]))
      throw config_error("load_gaussian: truncated data in " + path);
  }
  return GaussianFunction(grid, std::move(values));
}

struct CsvWriter::Impl {
  std::ofstream out;
  bool open = false;
};

CsvWriter::CsvWriter(const std::string& path, const std::string& json_header,
                     const std::vector<std::string>& columns)
    : impl_(new Impl) {
  impl_->out.open(path);
  if (!impl_->out) {
    delete impl_;
    throw config_error("CsvWriter: cannot open " + path);
  }
  impl_->open = true;
  impl_->out << "# " << json_header << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i)
    impl_->out << columns[i] << (i + 1 < columns.size() ? "," : "\n");
}

CsvWriter::~CsvWriter() {
  close();
  delete impl_;
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i)
    impl_->out << cells[i] << (i + 1 < cells.size() ? "," : "\n");
}

void CsvWriter::comment(const std::string& text) {
  impl_->out << "# " << text << '\n';
}

void CsvWriter::close() {
  if (impl_->open) {
    impl_->out.close();
    impl_->open = false;
  }
}

std::string CsvWriter::num(Real v) { return fmt17(v); }

}  // namespace ineq
