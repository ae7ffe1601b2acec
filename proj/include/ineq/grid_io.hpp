#pragma once

#include <string>
#include <vector>

#include "ineq/euclidean.hpp"
#include "ineq/gaussian.hpp"

namespace ineq {

// Columnar text format for function data: a single header line
//   kind=<radial|axisym|gaussian> d=<int> ... cols=<names>
// followed by one row of coordinates and value per node. Numbers are written
// with 17 significant digits so identical inputs reproduce identical bytes.
void save_grid(const std::string& path, const RadialFunction& f);
void save_grid(const std::string& path, const AxiSymFunction& f);
void save_grid(const std::string& path, const GaussianFunction& f);

RadialFunction load_radial(const std::string& path);
GaussianFunction load_gaussian(const std::string& path);

// Minimal CSV emitter with a JSON comment header carrying the resolved
// configuration, used by every experiment subcommand.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::string& json_header,
            const std::vector<std::string>& columns);
  ~CsvWriter();

  void row(const std::vector<std::string>& cells);
  void comment(const std::string& text);
  void close();

  static std::string num(Real v);

 private:
  struct Impl;
  Impl* impl_;
};

}  // namespace ineq
