#include <degen/vtk_io.hpp>

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <degen/errors.hpp>

namespace degen {

namespace {

// %.17g: shortest text that reproduces the double bit-for-bit on re-read
std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Tokenizer {
 public:
  explicit Tokenizer(std::string text) : text_(std::move(text)) {}

  bool next(std::string& tok) {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ >= text_.size()) return false;
    size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    tok = text_.substr(start, pos_ - start);
    return true;
  }

  std::string expect(const char* what) {
    std::string tok;
    if (!next(tok)) throw ParseError(std::string("unexpected end of file, expected ") + what);
    return tok;
  }

  long expect_int(const char* what) {
    std::string tok = expect(what);
    long v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
      throw ParseError(std::string("expected integer for ") + what + ", got '" + tok + "'");
    return v;
  }

  double expect_double(const char* what) {
    std::string tok = expect(what);
    try {
      size_t used = 0;
      double v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      return v;
    } catch (const std::exception&) {
      throw ParseError(std::string("expected number for ") + what + ", got '" + tok + "'");
    }
  }

  // consume to end of current line (used for the title line)
  void skip_line() {
    while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
    if (pos_ < text_.size()) ++pos_;
  }

 private:
  std::string text_;
  size_t pos_ = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IoError("write to '" + path + "' failed");
}

void write_header(std::ostringstream& out, const char* dataset, const char* title) {
  out << "# vtk DataFile Version 3.0\n" << title << "\nASCII\nDATASET " << dataset << "\n";
}

void write_points(std::ostringstream& out, const std::vector<Vec3>& pts) {
  out << "POINTS " << pts.size() << " double\n";
  for (const Vec3& p : pts) out << fmt(p.x) << " " << fmt(p.y) << " " << fmt(p.z) << "\n";
}

void write_scalar_channels(std::ostringstream& out,
                           const std::map<std::string, std::vector<double>>& channels,
                           size_t npoints, bool* point_data_open) {
  for (const auto& [name, values] : channels) {
    if (values.size() != npoints)
      throw IoError("channel '" + name + "' length does not match point count");
    if (!*point_data_open) {
      out << "POINT_DATA " << npoints << "\n";
      *point_data_open = true;
    }
    out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (double v : values) out << fmt(v) << "\n";
  }
}

}  // namespace

TensorField read_vtk_tensor_field(const std::string& path) {
  Tokenizer tk(read_file(path));

  std::string tok = tk.expect("VTK header");
  if (tok != "#") throw ParseError("missing '# vtk DataFile Version' header");
  if (tk.expect("header") != "vtk" || tk.expect("header") != "DataFile" ||
      tk.expect("header") != "Version")
    throw ParseError("missing '# vtk DataFile Version' header");
  tk.expect("version number");
  tk.skip_line();  // rest of version line
  tk.skip_line();  // title line

  std::string format = tk.expect("ASCII/BINARY");
  if (format != "ASCII") throw ParseError("only ASCII VTK files are supported, got " + format);
  if (tk.expect("DATASET") != "DATASET") throw ParseError("expected DATASET");
  std::string dstype = tk.expect("dataset type");
  if (dstype != "UNSTRUCTURED_GRID")
    throw ParseError("expected DATASET UNSTRUCTURED_GRID, got " + dstype);

  auto mesh = std::make_shared<TetMesh>();
  std::vector<SymTensor3> tensors;
  bool have_tensors = false;
  long npoints = -1;

  while (true) {
    std::string section;
    if (!tk.next(section)) break;

    if (section == "POINTS") {
      npoints = tk.expect_int("point count");
      tk.expect("point data type");
      mesh->points.resize(npoints);
      for (long i = 0; i < npoints; ++i) {
        double x = tk.expect_double("point x");
        double y = tk.expect_double("point y");
        double z = tk.expect_double("point z");
        mesh->points[i] = {x, y, z};
      }
    } else if (section == "CELLS") {
      long ncells = tk.expect_int("cell count");
      tk.expect_int("cell list size");
      mesh->tets.reserve(ncells);
      for (long c = 0; c < ncells; ++c) {
        long nv = tk.expect_int("cell vertex count");
        if (nv != 4)
          throw UnsupportedCellType("cell " + std::to_string(c) + " has " + std::to_string(nv) +
                                    " vertices; only tetrahedra are supported");
        std::array<int, 4> tet;
        for (int k = 0; k < 4; ++k) tet[k] = static_cast<int>(tk.expect_int("cell vertex"));
        mesh->tets.push_back(tet);
      }
    } else if (section == "CELL_TYPES") {
      long n = tk.expect_int("cell type count");
      for (long c = 0; c < n; ++c) {
        long t = tk.expect_int("cell type");
        if (t != 10)
          throw UnsupportedCellType("cell " + std::to_string(c) + " has VTK type " +
                                    std::to_string(t) + "; only type 10 (tetrahedron) is supported");
      }
    } else if (section == "POINT_DATA") {
      long n = tk.expect_int("point data count");
      if (n != npoints) throw ParseError("POINT_DATA count does not match POINTS");
    } else if (section == "TENSORS") {
      tk.expect("tensors name");
      tk.expect("tensors data type");
      if (npoints < 0) throw ParseError("TENSORS before POINTS");
      tensors.resize(npoints);
      for (long i = 0; i < npoints; ++i) {
        double m[9];
        for (double& v : m) v = tk.expect_double("tensor component");
        double scale = 0.0;
        for (double v : m) scale += v * v;
        scale = std::sqrt(scale);
        double asym = std::max({std::abs(m[1] - m[3]), std::abs(m[2] - m[6]),
                                std::abs(m[5] - m[7])});
        if (asym > 1e-6 * std::max(scale, 1e-30))
          throw AsymmetryError("tensor at point " + std::to_string(i) +
                               " violates symmetry tolerance (asymmetry " + fmt(asym) + ")");
        tensors[i] = {m[0], m[4], m[8], 0.5 * (m[1] + m[3]), 0.5 * (m[2] + m[6]),
                      0.5 * (m[5] + m[7])};
      }
      have_tensors = true;
    } else if (section == "FIELD") {
      tk.expect("field name");
      long narrays = tk.expect_int("field array count");
      for (long a = 0; a < narrays; ++a) {
        std::string aname = tk.expect("array name");
        long ncomp = tk.expect_int("array components");
        long ntuples = tk.expect_int("array tuples");
        tk.expect("array data type");
        if (aname == "sym_tensor" && ncomp == 6) {
          if (ntuples != npoints) throw ParseError("sym_tensor tuple count does not match POINTS");
          tensors.resize(npoints);
          for (long i = 0; i < npoints; ++i) {
            double xx = tk.expect_double("sym_tensor xx");
            double yy = tk.expect_double("sym_tensor yy");
            double zz = tk.expect_double("sym_tensor zz");
            double xy = tk.expect_double("sym_tensor xy");
            double xz = tk.expect_double("sym_tensor xz");
            double yz = tk.expect_double("sym_tensor yz");
            tensors[i] = {xx, yy, zz, xy, xz, yz};
          }
          have_tensors = true;
        } else {
          for (long i = 0; i < ncomp * ntuples; ++i) tk.expect_double("field value");
        }
      }
    } else if (section == "SCALARS") {
      tk.expect("scalars name");
      tk.expect("scalars data type");
      // optional component count, then LOOKUP_TABLE <name>
      std::string t = tk.expect("LOOKUP_TABLE");
      if (t != "LOOKUP_TABLE") {
        if (tk.expect("LOOKUP_TABLE") != "LOOKUP_TABLE") throw ParseError("expected LOOKUP_TABLE");
      }
      tk.expect("lookup table name");
      for (long i = 0; i < npoints; ++i) tk.expect_double("scalar value");
    } else {
      throw ParseError("unexpected token '" + section + "'");
    }
  }

  if (npoints < 0) throw ParseError("file has no POINTS block");
  if (mesh->tets.empty()) throw ParseError("file has no tetrahedra");
  if (!have_tensors) throw ParseError("file has no TENSORS block or sym_tensor FIELD array");

  mesh->orient_and_validate();
  TensorField field;
  field.mesh = std::move(mesh);
  field.tensors = std::move(tensors);
  return field;
}

namespace {

void write_unstructured_grid(std::ostringstream& out, const TetMesh& mesh) {
  write_points(out, mesh.points);
  out << "CELLS " << mesh.tets.size() << " " << mesh.tets.size() * 5 << "\n";
  for (const auto& t : mesh.tets)
    out << "4 " << t[0] << " " << t[1] << " " << t[2] << " " << t[3] << "\n";
  out << "CELL_TYPES " << mesh.tets.size() << "\n";
  for (size_t i = 0; i < mesh.tets.size(); ++i) out << "10\n";
}

}  // namespace

void write_vtk_tensor_field(const TensorField& field, const std::string& path) {
  std::ostringstream out;
  write_header(out, "UNSTRUCTURED_GRID", "tensor field");
  write_unstructured_grid(out, *field.mesh);
  out << "POINT_DATA " << field.tensors.size() << "\n";
  out << "TENSORS tensors double\n";
  for (const SymTensor3& t : field.tensors) {
    out << fmt(t.xx) << " " << fmt(t.xy) << " " << fmt(t.xz) << " " << fmt(t.xy) << " "
        << fmt(t.yy) << " " << fmt(t.yz) << " " << fmt(t.xz) << " " << fmt(t.yz) << " "
        << fmt(t.zz) << "\n";
  }
  write_file(path, out.str());
}

void write_vtk_scalar_field(const ScalarField& field, const std::string& name,
                            const std::string& path) {
  std::ostringstream out;
  write_header(out, "UNSTRUCTURED_GRID", "scalar field");
  write_unstructured_grid(out, *field.mesh);
  out << "POINT_DATA " << field.values.size() << "\n";
  out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
  for (double v : field.values) out << fmt(v) << "\n";
  write_file(path, out.str());
}

void write_polylines_vtk(const std::vector<FeaturePolyline>& lines, const std::string& path) {
  std::ostringstream out;
  write_header(out, "POLYDATA", "feature polylines");

  size_t npoints = 0;
  for (const auto& l : lines) npoints += l.points.size();

  out << "POINTS " << npoints << " double\n";
  for (const auto& l : lines)
    for (const Vec3& p : l.points) out << fmt(p.x) << " " << fmt(p.y) << " " << fmt(p.z) << "\n";

  size_t list_size = 0;
  for (const auto& l : lines) list_size += 1 + l.points.size() + (l.closed ? 1 : 0);
  out << "LINES " << lines.size() << " " << list_size << "\n";
  size_t base = 0;
  for (const auto& l : lines) {
    size_t n = l.points.size() + (l.closed ? 1 : 0);
    out << n;
    for (size_t i = 0; i < l.points.size(); ++i) out << " " << base + i;
    if (l.closed) out << " " << base;  // closed lines repeat their first point index
    out << "\n";
    base += l.points.size();
  }

  // union of channel names across lines; lines missing a channel emit NaN
  std::map<std::string, bool> names;
  bool have_tangents = false;
  for (const auto& l : lines) {
    for (const auto& [name, _] : l.attributes) names[name] = true;
    if (!l.tangents.empty()) have_tangents = true;
  }

  if ((!names.empty() || have_tangents) && npoints > 0) {
    out << "POINT_DATA " << npoints << "\n";
    for (const auto& [name, _] : names) {
      out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
      for (const auto& l : lines) {
        auto it = l.attributes.find(name);
        for (size_t i = 0; i < l.points.size(); ++i) {
          double v = (it != l.attributes.end() && i < it->second.size())
                         ? it->second[i]
                         : std::nan("");
          out << fmt(v) << "\n";
        }
      }
    }
    if (have_tangents) {
      out << "VECTORS tangent double\n";
      for (const auto& l : lines) {
        for (size_t i = 0; i < l.points.size(); ++i) {
          Vec3 t = i < l.tangents.size() ? l.tangents[i] : Vec3{0, 0, 0};
          out << fmt(t.x) << " " << fmt(t.y) << " " << fmt(t.z) << "\n";
        }
      }
    }
  }
  write_file(path, out.str());
}

void write_surface_vtk(const TriangleSurface& surface, const std::string& path) {
  std::ostringstream out;
  write_header(out, "POLYDATA", "feature surface");
  write_points(out, surface.points);
  out << "POLYGONS " << surface.triangles.size() << " " << surface.triangles.size() * 4 << "\n";
  for (const auto& t : surface.triangles) out << "3 " << t[0] << " " << t[1] << " " << t[2] << "\n";
  bool open = false;
  write_scalar_channels(out, surface.scalars, surface.points.size(), &open);
  write_file(path, out.str());
}

void write_obj(const std::vector<FeaturePolyline>& lines, const std::string& path) {
  std::ostringstream out;
  for (const auto& l : lines)
    for (const Vec3& p : l.points)
      out << "v " << fmt(p.x) << " " << fmt(p.y) << " " << fmt(p.z) << "\n";
  size_t base = 1;  // OBJ indices are 1-based
  for (const auto& l : lines) {
    if (l.points.size() >= 2) {
      out << "l";
      for (size_t i = 0; i < l.points.size(); ++i) out << " " << base + i;
      if (l.closed) out << " " << base;
      out << "\n";
    }
    base += l.points.size();
  }
  write_file(path, out.str());
}

void write_obj(const TriangleSurface& surface, const std::string& path) {
  std::ostringstream out;
  for (const Vec3& p : surface.points)
    out << "v " << fmt(p.x) << " " << fmt(p.y) << " " << fmt(p.z) << "\n";
  for (const auto& t : surface.triangles)
    out << "f " << t[0] + 1 << " " << t[1] + 1 << " " << t[2] + 1 << "\n";
  write_file(path, out.str());
}

}  // namespace degen
