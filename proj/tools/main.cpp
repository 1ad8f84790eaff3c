// Command-line front end: mesh generation, single solves, and convergence
// studies for the clamped-plate virtual element solver. Emits machine-readable
// CSV; exit codes are 0 on success, 2 for configuration errors, 3 for mesh
// I/O or generation failures, 4 for solver failures.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "c1vem/analysis.hpp"
#include "c1vem/assembly.hpp"
#include "c1vem/mesh.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitMesh = 3;
constexpr int kExitSolver = 4;

struct RunConfig {
  std::string element = "vem31";
  std::string mesh_type = "triangles";
  std::vector<int> subdivisions;  // --N
  std::vector<int> cell_counts;   // --cells
  double nu = 0.3;
  double rigidity = 1.0;
  std::uint64_t seed = 0;
  int lloyd = 0;
  std::string out;
  bool deterministic = false;
  bool zero_load = false;

  const std::vector<int>& sizes() const {
    return mesh_type == "triangles" ? subdivisions : cell_counts;
  }
};

std::string mesh_file_name(const RunConfig& cfg, int size) {
  if (cfg.mesh_type == "triangles") return "triangles_N" + std::to_string(size) + ".msh";
  return "voronoi_c" + std::to_string(size) + "_s" + std::to_string(cfg.seed) + ".msh";
}

std::vector<c1vem::PolygonalMesh> generate_meshes(const RunConfig& cfg) {
  std::vector<c1vem::PolygonalMesh> meshes;
  for (int size : cfg.sizes()) {
    if (cfg.mesh_type == "triangles")
      meshes.push_back(c1vem::build_uniform_triangle_mesh(size));
    else
      meshes.push_back(c1vem::build_voronoi_mesh(size, cfg.seed, cfg.lloyd));
  }
  return meshes;
}

void validate_sizes(const RunConfig& cfg, std::size_t minimum) {
  const auto& sizes = cfg.sizes();
  if (sizes.size() < minimum) {
    if (minimum >= 2) throw CLI::ValidationError("need >= 2 meshes");
    throw CLI::ValidationError(cfg.mesh_type == "triangles" ? "--N is required"
                                                            : "--cells is required");
  }
  for (int s : sizes)
    if (s < 1) throw CLI::ValidationError("mesh sizes must be positive");
}

int cmd_mesh(const RunConfig& cfg) {
  validate_sizes(cfg, 1);
  const auto meshes = generate_meshes(cfg);

  namespace fs = std::filesystem;
  std::vector<std::string> paths;
  if (meshes.size() == 1 && !cfg.out.empty() && !fs::is_directory(cfg.out)) {
    paths.push_back(cfg.out);
  } else {
    fs::path dir = cfg.out.empty() ? fs::path(".") : fs::path(cfg.out);
    fs::create_directories(dir);
    for (std::size_t i = 0; i < meshes.size(); ++i)
      paths.push_back((dir / mesh_file_name(cfg, cfg.sizes()[i])).string());
  }

  std::printf("file,n_vertices,n_cells,h_max,h_mean,rho_star,min_edge_ratio\n");
  for (std::size_t i = 0; i < meshes.size(); ++i) {
    c1vem::write_mesh(meshes[i], paths[i]);
    const c1vem::ShapeRegularityReport rep = c1vem::check_shape_regularity(meshes[i]);
    std::printf("%s,%d,%d,%.12g,%.12g,%.12g,%.12g\n", paths[i].c_str(), meshes[i].n_vertices(),
                meshes[i].n_cells(), rep.h_max, rep.h_mean, rep.rho_star, rep.min_edge_ratio);
  }
  return 0;
}

void print_report_row(const c1vem::ErrorReport& r) {
  std::printf("h,n_dofs,rel_L2,rel_H1,rel_H2,residual\n");
  std::printf("%.12g,%d,%.12g,%.12g,%.12g,%.12g\n", r.h, r.n_dofs, r.rel_l2, r.rel_h1, r.rel_h2,
              r.residual);
}

int cmd_solve(const RunConfig& cfg, const std::string& mesh_path) {
  const c1vem::PolygonalMesh mesh = c1vem::read_mesh(mesh_path);
  const c1vem::ElementSpec spec = c1vem::ElementSpec::from_name(cfg.element);
  const c1vem::ManufacturedCase benchmark = c1vem::manufactured_square(cfg.rigidity);

  c1vem::PlateModel model;
  model.bending_rigidity = cfg.rigidity;
  model.poisson_ratio = cfg.nu;
  if (cfg.zero_load)
    model.load = [](const c1vem::Vec2&) { return 0.0; };
  else
    model.load = benchmark.load;

  const c1vem::GlobalSystem system = c1vem::assemble(mesh, spec, model, cfg.deterministic);
  const c1vem::SolveResult sol = c1vem::solve(system);
  const c1vem::ErrorReport report =
      c1vem::compute_errors(benchmark, mesh, spec, sol.solution, sol.residual);
  print_report_row(report);

  if (!cfg.out.empty()) {
    std::ofstream out(cfg.out);
    if (!out) throw c1vem::Error("cannot open '" + cfg.out + "' for writing");
    char buf[64];
    for (int i = 0; i < sol.solution.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", sol.solution[i]);
      out << buf << '\n';
    }
  }
  return 0;
}

int cmd_convergence(const RunConfig& cfg) {
  validate_sizes(cfg, 2);
  const c1vem::ElementSpec spec = c1vem::ElementSpec::from_name(cfg.element);
  const c1vem::ManufacturedCase benchmark = c1vem::manufactured_square(cfg.rigidity);

  c1vem::PlateModel model;
  model.bending_rigidity = cfg.rigidity;
  model.poisson_ratio = cfg.nu;
  if (cfg.zero_load)
    model.load = [](const c1vem::Vec2&) { return 0.0; };
  else
    model.load = benchmark.load;

  const auto meshes = generate_meshes(cfg);
  const c1vem::ConvergenceTable table =
      c1vem::convergence_study(benchmark, meshes, spec, model, cfg.deterministic);
  c1vem::write_csv(std::cout, table);
  if (!cfg.out.empty()) {
    std::ofstream out(cfg.out);
    if (!out) throw c1vem::Error("cannot open '" + cfg.out + "' for writing");
    c1vem::write_csv(out, table);
  }
  return 0;
}

void add_model_flags(CLI::App* app, RunConfig& cfg) {
  app->add_option("--nu", cfg.nu, "Poisson ratio")->capture_default_str();
  app->add_option("--D", cfg.rigidity, "bending rigidity")->capture_default_str();
}

void add_mesh_flags(CLI::App* app, RunConfig& cfg) {
  app->add_option("--type", cfg.mesh_type, "mesh family")
      ->check(CLI::IsMember({"triangles", "voronoi"}))
      ->capture_default_str();
  app->add_option("--N", cfg.subdivisions, "triangle subdivisions, comma separated")
      ->delimiter(',');
  app->add_option("--cells", cfg.cell_counts, "Voronoi cell counts, comma separated")
      ->delimiter(',');
  app->add_option("--seed", cfg.seed, "Voronoi seed")->capture_default_str();
  app->add_option("--lloyd", cfg.lloyd, "Lloyd relaxation iterations")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"C1 virtual element solver for the clamped Kirchhoff-Love plate"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string mesh_path;

  CLI::App* mesh = app.add_subcommand("mesh", "generate mesh files and report shape regularity");
  add_mesh_flags(mesh, cfg);
  mesh->add_option("--out", cfg.out, "output file (single mesh) or directory");

  CLI::App* solve = app.add_subcommand("solve", "solve the manufactured benchmark on one mesh");
  solve->add_option("--element", cfg.element, "vem31 (k=2) or vem32 (k=3)")
      ->check(CLI::IsMember({"vem31", "vem32"}))
      ->capture_default_str();
  solve->add_option("--mesh", mesh_path, "mesh file")->required();
  add_model_flags(solve, cfg);
  solve->add_flag("--zero-load", cfg.zero_load, "replace the load by f = 0");
  solve->add_flag("--deterministic", cfg.deterministic, "single-threaded, fixed-order assembly");
  solve->add_option("--out", cfg.out, "write the solution dof vector to this path");

  CLI::App* conv = app.add_subcommand("convergence", "run a mesh sequence and fit rates");
  conv->add_option("--element", cfg.element, "vem31 (k=2) or vem32 (k=3)")
      ->check(CLI::IsMember({"vem31", "vem32"}))
      ->capture_default_str();
  add_mesh_flags(conv, cfg);
  add_model_flags(conv, cfg);
  conv->add_flag("--zero-load", cfg.zero_load, "replace the load by f = 0");
  conv->add_flag("--deterministic", cfg.deterministic, "single-threaded, fixed-order assembly");
  conv->add_option("--out", cfg.out, "also write the CSV to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (mesh->parsed()) return cmd_mesh(cfg);
    if (solve->parsed()) return cmd_solve(cfg, mesh_path);
    return cmd_convergence(cfg);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const c1vem::SolveError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const c1vem::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMesh;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMesh;
  }
}
