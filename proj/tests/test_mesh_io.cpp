#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "ftle/generate.hpp"
#include "ftle/io.hpp"
#include "test_support.hpp"

using namespace ftle;

namespace {

std::filesystem::path temp_dir() {
  auto dir = std::filesystem::temp_directory_path() / "ftle_io_test";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("binary round trip of the unit square mesh") {
  const auto dir = temp_dir();
  const std::string coords = (dir / "sq.coords.bin").string();
  const std::string faces = (dir / "sq.faces.bin").string();
  SimplicialMesh mesh = test::unit_square_mesh();
  save_coords(coords, mesh);
  save_faces(faces, mesh);
  SimplicialMesh loaded = load_mesh(coords, faces);
  CHECK(loaded.dim == 2);
  CHECK(loaded.n_points == 4);
  CHECK(loaded.n_faces == 2);
  CHECK(loaded.coords == mesh.coords);
  CHECK(loaded.faces == mesh.faces);
}

TEST_CASE("csv round trip of a tetrahedral mesh") {
  const auto dir = temp_dir();
  const std::string coords = (dir / "tet.coords.csv").string();
  const std::string faces = (dir / "tet.faces.csv").string();
  SimplicialMesh mesh;
  mesh.dim = 3;
  mesh.n_points = 5;
  mesh.coords = {0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 1, 1, 1};
  mesh.n_faces = 2;
  mesh.faces = {0, 1, 2, 3, 1, 2, 3, 4};
  save_coords(coords, mesh);
  save_faces(faces, mesh);
  SimplicialMesh loaded = load_mesh(coords, faces);
  CHECK(loaded.dim == 3);
  CHECK(loaded.n_points == 5);
  CHECK(loaded.n_faces == 2);
  CHECK(loaded.coords == mesh.coords);
  CHECK(loaded.faces == mesh.faces);
}

TEST_CASE("hand-written csv with comments loads") {
  const auto dir = temp_dir();
  const std::string coords = (dir / "hand.coords.csv").string();
  const std::string faces = (dir / "hand.faces.csv").string();
  {
    std::ofstream c(coords);
    c << "# unit square\n0,0\n1,0\n0,1\n1,1\n";
    std::ofstream f(faces);
    f << "0,1,2\n1,3,2  # second triangle\n";
  }
  SimplicialMesh mesh = load_mesh(coords, faces);
  CHECK(mesh.n_points == 4);
  CHECK(mesh.n_faces == 2);
}

TEST_CASE("face index out of range is rejected with location") {
  const auto dir = temp_dir();
  const std::string coords = (dir / "bad.coords.csv").string();
  const std::string faces = (dir / "bad.faces.csv").string();
  {
    std::ofstream c(coords);
    c << "0,0\n1,0\n0,1\n1,1\n";
    std::ofstream f(faces);
    f << "0,1,9\n";
  }
  CHECK_THROWS_WITH_AS(load_mesh(coords, faces),
                       doctest::Contains("out of range"), ValidationError);
}

TEST_CASE("repeated vertex in a face is rejected") {
  SimplicialMesh mesh = test::unit_square_mesh();
  mesh.faces[1] = 0;  // (0,0,2)
  CHECK_THROWS_WITH_AS(mesh.validate(), doctest::Contains("repeats"), ValidationError);
}

TEST_CASE("bad magic is an IoError") {
  const auto dir = temp_dir();
  const std::string path = (dir / "corrupt.bin").string();
  {
    std::ofstream out(path, std::ios::binary);
    out << "NOPE and then some bytes";
  }
  CHECK_THROWS_WITH_AS(load_neighbors(path), doctest::Contains("bad magic"), IoError);
}

TEST_CASE("truncated payload is an IoError") {
  const auto dir = temp_dir();
  const std::string full = (dir / "full.coords.bin").string();
  const std::string cut = (dir / "cut.coords.bin").string();
  SimplicialMesh mesh = test::unit_square_mesh();
  save_coords(full, mesh);
  {
    std::ifstream in(full, std::ios::binary);
    std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
    std::ofstream out(cut, std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size() - 8));
  }
  const std::string faces = (dir / "full.faces.bin").string();
  save_faces(faces, mesh);
  CHECK_THROWS_AS(load_mesh(cut, faces), IoError);
}

TEST_CASE("wrong payload kind is rejected") {
  const auto dir = temp_dir();
  const std::string coords = (dir / "kind.coords.bin").string();
  SimplicialMesh mesh = test::unit_square_mesh();
  save_coords(coords, mesh);
  CHECK_THROWS_WITH_AS(load_flowmap(coords, 1.0), doctest::Contains("kind"), IoError);
}

TEST_CASE("empty faces csv loads as zero faces") {
  const auto dir = temp_dir();
  const std::string coords = (dir / "e.coords.csv").string();
  const std::string faces = (dir / "e.faces.csv").string();
  {
    std::ofstream c(coords);
    c << "0,0\n1,1\n";
    std::ofstream f(faces);
    f << "# no faces\n";
  }
  SimplicialMesh mesh = load_mesh(coords, faces);
  CHECK(mesh.n_faces == 0);
}

TEST_CASE("field save/load round trip keeps NaN sentinels") {
  const auto dir = temp_dir();
  const std::vector<double> values = {0.5, std::nan(""), -1.25};
  for (const char* name : {"f.bin", "f.csv"}) {
    const std::string path = (dir / name).string();
    save_field(path, 2, values);
    const auto loaded = load_field(path);
    REQUIRE(loaded.size() == 3);
    CHECK(loaded[0] == 0.5);
    CHECK(std::isnan(loaded[1]));
    CHECK(loaded[2] == -1.25);
  }
}

TEST_CASE("flowmap requires nonzero horizon") {
  const auto dir = temp_dir();
  const std::string path = (dir / "fm.bin").string();
  FlowMap fm;
  fm.dim = 2;
  fm.n_points = 1;
  fm.values = {0.0, 0.0};
  save_flowmap(path, fm);
  CHECK_THROWS_AS(load_flowmap(path, 0.0), ValidationError);
}

TEST_CASE("property: binary and csv loaders agree on generated meshes") {
  std::mt19937_64 rng(77);
  const auto dir = temp_dir();
  for (int trial = 0; trial < 10; ++trial) {
    const int dim = trial % 2 == 0 ? 2 : 3;
    SimplicialMesh mesh = generate_random_mesh(dim, 10 + trial * 7, rng);
    const std::string cb = (dir / "p.coords.bin").string();
    const std::string fb = (dir / "p.faces.bin").string();
    const std::string cc = (dir / "p.coords.csv").string();
    const std::string fc = (dir / "p.faces.csv").string();
    save_coords(cb, mesh);
    save_faces(fb, mesh);
    save_coords(cc, mesh);
    save_faces(fc, mesh);
    SimplicialMesh from_bin = load_mesh(cb, fb);
    SimplicialMesh from_csv = load_mesh(cc, fc);
    CHECK(from_bin.faces == from_csv.faces);
    CHECK(from_bin.coords == mesh.coords);  // binary is bit-exact
    REQUIRE(from_csv.coords.size() == mesh.coords.size());
    for (std::size_t i = 0; i < mesh.coords.size(); ++i) {
      CHECK(from_csv.coords[i] == mesh.coords[i]);  // 17 digits round-trips
    }
  }
}
