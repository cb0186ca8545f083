#include "fequiv/csv.hpp"

#include "fequiv/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <vector>

namespace fequiv {

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

struct Lines {
  std::istream& in;
  const std::string& name;
  std::size_t number = 0;
  std::string text;

  // Next non-blank line; false at end of input.
  bool next() {
    while (std::getline(in, text)) {
      ++number;
      if (!trim(text).empty()) return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(name, number, what); }

  std::vector<double> numbers(std::size_t skip = 0) const {
    const auto fields = split(text);
    std::vector<double> out;
    out.reserve(fields.size() - std::min(skip, fields.size()));
    for (std::size_t i = skip; i < fields.size(); ++i) {
      try {
        out.push_back(parse_double(fields[i]));
      } catch (const InvalidArgumentError& e) {
        fail("column " + std::to_string(i + 1) + ": " + e.what());
      }
    }
    return out;
  }

  long integer(std::string_view field, const char* what) const {
    field = trim(field);
    long v = 0;
    const auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || p != field.data() + field.size()) fail(std::string("invalid ") + what);
    return v;
  }
};

GridPtr grid_from(const Lines& lines, std::vector<double> points) {
  try {
    return std::make_shared<const Grid>(std::move(points));
  } catch (const Error& e) {
    lines.fail(std::string("invalid grid: ") + e.what());
  }
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidArgumentError("cannot write " + path);
  return out;
}

void write_row(std::ostream& out, const Eigen::Ref<const Eigen::RowVectorXd>& row) {
  for (Eigen::Index i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, p);
}

double parse_double(std::string_view field) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  const auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc() || p != field.data() + field.size())
    throw InvalidArgumentError("not a number: '" + std::string(field) + "'");
  if (!std::isfinite(v)) throw InvalidArgumentError("non-finite value");
  return v;
}

void write_sample_csv(std::ostream& out, const FunctionalSample& sample) {
  write_row(out, sample.grid()->points().transpose());
  out << '\n';
  for (Eigen::Index r = 0; r < sample.curves().rows(); ++r) {
    write_row(out, sample.curves().row(r));
    out << '\n';
  }
}

FunctionalSample read_sample_csv(std::istream& in, const std::string& name) {
  Lines lines{in, name, 0, {}};
  if (!lines.next()) throw ParseError(name, 0, "empty file");
  const GridPtr grid = grid_from(lines, lines.numbers());
  std::vector<std::vector<double>> rows;
  while (lines.next()) {
    auto v = lines.numbers();
    if (v.size() != grid->size())
      lines.fail("expected " + std::to_string(grid->size()) + " values, found " + std::to_string(v.size()));
    rows.push_back(std::move(v));
  }
  if (rows.empty()) throw ParseError(name, lines.number, "no curves after the grid row");
  RowMatrix curves(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(grid->size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    curves.row(static_cast<Eigen::Index>(r)) =
        Eigen::Map<const Eigen::RowVectorXd>(rows[r].data(), static_cast<Eigen::Index>(rows[r].size()));
  return FunctionalSample(grid, std::move(curves));
}

FunctionalSample read_sample_csv(const std::string& path) {
  auto in = open_in(path);
  return read_sample_csv(in, path);
}

void write_sample_csv(const std::string& path, const FunctionalSample& sample) {
  auto out = open_out(path);
  write_sample_csv(out, sample);
}

void write_paired_csv(std::ostream& out, const PairedRESample& data) {
  out << "device,group,index,";
  write_row(out, data.grid()->points().transpose());
  out << '\n';
  for (std::size_t i = 0; i < data.group_count(); ++i) {
    const auto& g = data.groups()[i];
    for (Eigen::Index j = 0; j < g.first.rows(); ++j) {
      for (int device : {1, 2}) {
        out << device << ',' << i + 1 << ',' << j + 1 << ',';
        write_row(out, (device == 1 ? g.first : g.second).row(j));
        out << '\n';
      }
    }
  }
}

PairedRESample read_paired_csv(std::istream& in, const std::string& name) {
  Lines lines{in, name, 0, {}};
  if (!lines.next()) throw ParseError(name, 0, "empty file");
  {
    const auto head = split(lines.text);
    if (head.size() < 5 || trim(head[0]) != "device" || trim(head[1]) != "group" || trim(head[2]) != "index")
      lines.fail("header must start with device,group,index followed by at least two grid points");
  }
  const GridPtr grid = grid_from(lines, lines.numbers(3));

  // group -> index -> (device-1 row, device-2 row)
  std::map<long, std::map<long, std::pair<std::vector<double>, std::vector<double>>>> cells;
  while (lines.next()) {
    const auto fields = split(lines.text);
    if (fields.size() != grid->size() + 3)
      lines.fail("expected " + std::to_string(grid->size() + 3) + " columns, found " + std::to_string(fields.size()));
    const long device = lines.integer(fields[0], "device");
    const long group = lines.integer(fields[1], "group");
    const long index = lines.integer(fields[2], "index");
    if (device != 1 && device != 2) lines.fail("device must be 1 or 2");
    if (group < 1 || index < 1) lines.fail("group and index are 1-based");
    auto& slot = cells[group][index];
    auto& target = device == 1 ? slot.first : slot.second;
    if (!target.empty()) lines.fail("duplicate (device, group, index) row");
    target = lines.numbers(3);
  }

  std::vector<PairedGroup> groups;
  long expected_group = 1;
  for (const auto& [group, rows] : cells) {
    if (group != expected_group) throw ParseError(name, lines.number, "group " + std::to_string(expected_group) + " missing");
    ++expected_group;
    PairedGroup g{RowMatrix(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(grid->size())),
                  RowMatrix(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(grid->size()))};
    long expected_index = 1;
    for (const auto& [index, pair] : rows) {
      const std::string where = "group " + std::to_string(group) + " index " + std::to_string(index);
      if (index != expected_index) throw ParseError(name, lines.number, where + ": preceding index missing");
      if (pair.first.empty() || pair.second.empty())
        throw ParseError(name, lines.number, where + ": device " + (pair.first.empty() ? "1" : "2") + " row missing");
      const auto r = static_cast<Eigen::Index>(index - 1);
      g.first.row(r) = Eigen::Map<const Eigen::RowVectorXd>(pair.first.data(), g.first.cols());
      g.second.row(r) = Eigen::Map<const Eigen::RowVectorXd>(pair.second.data(), g.second.cols());
      ++expected_index;
    }
    groups.push_back(std::move(g));
  }
  try {
    return PairedRESample(grid, std::move(groups));
  } catch (const Error& e) {
    throw ParseError(name, lines.number, e.what());
  }
}

PairedRESample read_paired_csv(const std::string& path) {
  auto in = open_in(path);
  return read_paired_csv(in, path);
}

void write_paired_csv(const std::string& path, const PairedRESample& data) {
  auto out = open_out(path);
  write_paired_csv(out, data);
}

}  // namespace fequiv
