#include "ftle/io.hpp"

#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

namespace ftle {

namespace {

constexpr char kMagic[4] = {'F', 'T', 'L', 'E'};
constexpr std::uint32_t kVersion = 1;

bool is_csv_path(const std::string& path) {
  return path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
}

struct BinaryHeader {
  std::uint32_t version;
  std::uint32_t kind;
  std::uint32_t dim;
  std::uint64_t count;
};

// All binary payloads are little-endian; this loader assumes a little-endian
// host, which it verifies once.
void require_little_endian() {
  const std::uint32_t probe = 1;
  char byte0;
  std::memcpy(&byte0, &probe, 1);
  if (byte0 != 1) throw IoError("binary format requires a little-endian host");
}

BinaryHeader read_header(std::ifstream& in, const std::string& path, PayloadKind expected) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) {
    throw IoError(path + ": bad magic at offset 0 (expected \"FTLE\")");
  }
  BinaryHeader h{};
  if (!in.read(reinterpret_cast<char*>(&h.version), 4) ||
      !in.read(reinterpret_cast<char*>(&h.kind), 4) ||
      !in.read(reinterpret_cast<char*>(&h.dim), 4) ||
      !in.read(reinterpret_cast<char*>(&h.count), 8)) {
    throw IoError(path + ": truncated header");
  }
  if (h.version != kVersion) {
    throw IoError(path + ": unsupported version " + std::to_string(h.version));
  }
  if (h.kind != static_cast<std::uint32_t>(expected)) {
    throw IoError(path + ": payload kind " + std::to_string(h.kind) + ", expected " +
                  std::to_string(static_cast<std::uint32_t>(expected)));
  }
  if (h.dim != 2 && h.dim != 3) {
    throw IoError(path + ": unsupported dim " + std::to_string(h.dim));
  }
  return h;
}

template <class T>
void read_exact(std::ifstream& in, const std::string& path, std::vector<T>& out,
                std::size_t n_values) {
  out.resize(n_values);
  const std::streamsize bytes = static_cast<std::streamsize>(n_values * sizeof(T));
  if (!in.read(reinterpret_cast<char*>(out.data()), bytes)) {
    std::ostringstream os;
    os << path << ": truncated payload at offset " << (24 + in.gcount());
    throw IoError(os.str());
  }
}

void write_header(std::ofstream& out, PayloadKind kind, std::uint32_t dim,
                  std::uint64_t count) {
  out.write(kMagic, 4);
  const std::uint32_t version = kVersion;
  const std::uint32_t k = static_cast<std::uint32_t>(kind);
  out.write(reinterpret_cast<const char*>(&version), 4);
  out.write(reinterpret_cast<const char*>(&k), 4);
  out.write(reinterpret_cast<const char*>(&dim), 4);
  out.write(reinterpret_cast<const char*>(&count), 8);
}

std::ofstream open_output(const std::string& path, bool binary) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw IoError(path + ": cannot open for writing");
  return out;
}

std::ifstream open_input(const std::string& path, bool binary) {
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) throw IoError(path + ": cannot open for reading");
  return in;
}

// CSV records: fixed column count per line, '#' starts a comment, blank
// lines skipped. Column count of the first record fixes the shape.
struct CsvTable {
  std::vector<std::vector<std::string>> rows;
  std::vector<int> line_numbers;
  int columns = 0;
};

CsvTable read_csv(const std::string& path) {
  std::ifstream in = open_input(path, false);
  CsvTable table;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    // trim
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (table.columns == 0) {
      table.columns = static_cast<int>(fields.size());
    } else if (static_cast<int>(fields.size()) != table.columns) {
      throw IoError(path + ":" + std::to_string(line_no) + ": expected " +
                    std::to_string(table.columns) + " columns, got " +
                    std::to_string(fields.size()));
    }
    table.rows.push_back(std::move(fields));
    table.line_numbers.push_back(line_no);
  }
  return table;
}

double parse_double(const std::string& path, int line_no, const std::string& s) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw IoError(path + ":" + std::to_string(line_no) + ": bad number '" + s + "'");
  }
}

std::int32_t parse_i32(const std::string& path, int line_no, const std::string& s) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(s, &pos);
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos != s.size()) throw std::invalid_argument(s);
    if (v < std::numeric_limits<std::int32_t>::min() ||
        v > std::numeric_limits<std::int32_t>::max()) {
      throw std::out_of_range(s);
    }
    return static_cast<std::int32_t>(v);
  } catch (const std::exception&) {
    throw IoError(path + ":" + std::to_string(line_no) + ": bad integer '" + s + "'");
  }
}

struct DoubleMatrix {
  int dim;
  std::uint64_t count;
  std::vector<double> values;
};

DoubleMatrix load_double_matrix(const std::string& path, PayloadKind kind) {
  DoubleMatrix out;
  if (is_csv_path(path)) {
    CsvTable table = read_csv(path);
    if (table.columns != 2 && table.columns != 3) {
      throw IoError(path + ": expected 2 or 3 columns, got " + std::to_string(table.columns));
    }
    out.dim = table.columns;
    out.count = table.rows.size();
    out.values.reserve(out.count * out.dim);
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      for (const auto& f : table.rows[r]) {
        out.values.push_back(parse_double(path, table.line_numbers[r], f));
      }
    }
    return out;
  }
  require_little_endian();
  std::ifstream in = open_input(path, true);
  BinaryHeader h = read_header(in, path, kind);
  out.dim = static_cast<int>(h.dim);
  out.count = h.count;
  read_exact(in, path, out.values, static_cast<std::size_t>(h.count) * h.dim);
  return out;
}

void save_double_matrix(const std::string& path, PayloadKind kind, int dim,
                        std::uint64_t count, const std::vector<double>& values) {
  if (is_csv_path(path)) {
    std::ofstream out = open_output(path, false);
    out.precision(17);
    for (std::uint64_t r = 0; r < count; ++r) {
      for (int c = 0; c < dim; ++c) {
        if (c) out << ',';
        out << values[r * dim + c];
      }
      out << '\n';
    }
    if (!out) throw IoError(path + ": write failed");
    return;
  }
  require_little_endian();
  std::ofstream out = open_output(path, true);
  write_header(out, kind, static_cast<std::uint32_t>(dim), count);
  out.write(reinterpret_cast<const char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(double)));
  if (!out) throw IoError(path + ": write failed");
}

struct IntMatrix {
  int columns;
  std::uint64_t count;
  std::vector<std::int32_t> values;
};

IntMatrix load_int_matrix(const std::string& path, PayloadKind kind,
                          int columns_per_dim2, int columns_per_dim3) {
  IntMatrix out;
  if (is_csv_path(path)) {
    CsvTable table = read_csv(path);
    if (table.rows.empty()) {
      out.columns = 0;
      out.count = 0;
      return out;
    }
    if (table.columns != columns_per_dim2 && table.columns != columns_per_dim3) {
      throw IoError(path + ": expected " + std::to_string(columns_per_dim2) + " or " +
                    std::to_string(columns_per_dim3) + " columns, got " +
                    std::to_string(table.columns));
    }
    out.columns = table.columns;
    out.count = table.rows.size();
    out.values.reserve(out.count * out.columns);
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      for (const auto& f : table.rows[r]) {
        out.values.push_back(parse_i32(path, table.line_numbers[r], f));
      }
    }
    return out;
  }
  require_little_endian();
  std::ifstream in = open_input(path, true);
  BinaryHeader h = read_header(in, path, kind);
  out.columns = kind == PayloadKind::Faces ? static_cast<int>(h.dim) + 1
                                           : 2 * static_cast<int>(h.dim);
  out.count = h.count;
  read_exact(in, path, out.values, static_cast<std::size_t>(h.count) * out.columns);
  return out;
}

void save_int_matrix(const std::string& path, PayloadKind kind, int dim, int columns,
                     std::uint64_t count, const std::vector<std::int32_t>& values) {
  if (is_csv_path(path)) {
    std::ofstream out = open_output(path, false);
    for (std::uint64_t r = 0; r < count; ++r) {
      for (int c = 0; c < columns; ++c) {
        if (c) out << ',';
        out << values[r * columns + c];
      }
      out << '\n';
    }
    if (!out) throw IoError(path + ": write failed");
    return;
  }
  require_little_endian();
  std::ofstream out = open_output(path, true);
  write_header(out, kind, static_cast<std::uint32_t>(dim), count);
  out.write(reinterpret_cast<const char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(std::int32_t)));
  if (!out) throw IoError(path + ": write failed");
}

}  // namespace

SimplicialMesh load_mesh(const std::string& coords_path, const std::string& faces_path) {
  DoubleMatrix coords = load_double_matrix(coords_path, PayloadKind::Coords);
  IntMatrix faces = load_int_matrix(faces_path, PayloadKind::Faces, 3, 4);
  SimplicialMesh mesh;
  mesh.dim = coords.dim;
  mesh.n_points = static_cast<std::int64_t>(coords.count);
  mesh.coords = std::move(coords.values);
  if (faces.count == 0) faces.columns = mesh.dim + 1;  // empty CSV carries no width
  if (faces.columns != mesh.dim + 1) {
    throw IoError(faces_path + ": face width " + std::to_string(faces.columns) +
                  " does not match dim " + std::to_string(mesh.dim));
  }
  mesh.n_faces = static_cast<std::int64_t>(faces.count);
  mesh.faces = std::move(faces.values);
  mesh.validate();
  return mesh;
}

FlowMap load_flowmap(const std::string& path, double t_horizon) {
  DoubleMatrix m = load_double_matrix(path, PayloadKind::FlowMap);
  if (t_horizon == 0.0) throw ValidationError("t_horizon must be nonzero");
  FlowMap fm;
  fm.dim = m.dim;
  fm.n_points = static_cast<std::int64_t>(m.count);
  fm.values = std::move(m.values);
  fm.t_horizon = t_horizon;
  return fm;
}

NeighborList load_neighbors(const std::string& path) {
  IntMatrix m = load_int_matrix(path, PayloadKind::Neighbors, 4, 6);
  NeighborList nl;
  nl.dim = m.columns / 2;
  nl.n_points = static_cast<std::int64_t>(m.count);
  nl.entries = std::move(m.values);
  return nl;
}

std::vector<double> load_field(const std::string& path) {
  if (is_csv_path(path)) {
    CsvTable table = read_csv(path);
    if (table.columns != 2) {
      throw IoError(path + ": field CSV expects index,value columns");
    }
    std::vector<double> values(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      const int line = table.line_numbers[r];
      const std::int32_t idx = parse_i32(path, line, table.rows[r][0]);
      if (idx < 0 || static_cast<std::size_t>(idx) >= values.size()) {
        throw IoError(path + ":" + std::to_string(line) + ": field index out of range");
      }
      const std::string& s = table.rows[r][1];
      values[idx] = (s == "nan" || s == "-nan")
                        ? std::numeric_limits<double>::quiet_NaN()
                        : parse_double(path, line, s);
    }
    return values;
  }
  require_little_endian();
  std::ifstream in = open_input(path, true);
  BinaryHeader h = read_header(in, path, PayloadKind::Field);
  std::vector<double> values;
  read_exact(in, path, values, static_cast<std::size_t>(h.count));
  return values;
}

void save_coords(const std::string& path, const SimplicialMesh& mesh) {
  save_double_matrix(path, PayloadKind::Coords, mesh.dim,
                     static_cast<std::uint64_t>(mesh.n_points), mesh.coords);
}

void save_faces(const std::string& path, const SimplicialMesh& mesh) {
  save_int_matrix(path, PayloadKind::Faces, mesh.dim, mesh.dim + 1,
                  static_cast<std::uint64_t>(mesh.n_faces), mesh.faces);
}

void save_flowmap(const std::string& path, const FlowMap& fm) {
  save_double_matrix(path, PayloadKind::FlowMap, fm.dim,
                     static_cast<std::uint64_t>(fm.n_points), fm.values);
}

void save_neighbors(const std::string& path, const NeighborList& nl) {
  save_int_matrix(path, PayloadKind::Neighbors, nl.dim, 2 * nl.dim,
                  static_cast<std::uint64_t>(nl.n_points), nl.entries);
}

void save_field(const std::string& path, int dim, const std::vector<double>& values) {
  if (is_csv_path(path)) {
    std::ofstream out = open_output(path, false);
    out.precision(17);
    for (std::size_t i = 0; i < values.size(); ++i) {
      out << i << ',';
      if (std::isnan(values[i])) {
        out << "nan";
      } else {
        out << values[i];
      }
      out << '\n';
    }
    if (!out) throw IoError(path + ": write failed");
    return;
  }
  require_little_endian();
  std::ofstream out = open_output(path, true);
  write_header(out, PayloadKind::Field, static_cast<std::uint32_t>(dim), values.size());
  out.write(reinterpret_cast<const char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(double)));
  if (!out) throw IoError(path + ": write failed");
}

std::uint64_t file_checksum(const std::string& path) {
  std::ifstream in = open_input(path, true);
  std::uint64_t hash = 0xcbf29ce484222325ull;
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    const std::streamsize n = in.gcount();
    for (std::streamsize i = 0; i < n; ++i) {
      hash ^= static_cast<unsigned char>(buf[i]);
      hash *= 0x100000001b3ull;
    }
    if (!in) break;
  }
  return hash;
}

}  // namespace ftle
