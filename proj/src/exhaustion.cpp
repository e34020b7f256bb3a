#include "exhaustion.hpp"

#include <algorithm>
#include <stdexcept>

namespace ptk::exh {

int euler_characteristic(const SurfaceDescriptor& s) {
  validate_surface(s);
  return s.orientable ? 2 - 2 * s.genus_or_crosscaps - s.boundary_circles
                      : 2 - s.genus_or_crosscaps - s.boundary_circles;
}

bool is_disk(const SurfaceDescriptor& s) {
  return s.orientable && s.genus_or_crosscaps == 0 && s.boundary_circles == 1;
}

bool is_sphere(const SurfaceDescriptor& s) {
  return s.orientable && s.genus_or_crosscaps == 0 && s.boundary_circles == 0;
}

void validate_surface(const SurfaceDescriptor& s) {
  if (s.genus_or_crosscaps < 0 || s.boundary_circles < 0)
    throw std::invalid_argument("surface counts must be non-negative");
  if (!s.orientable && s.genus_or_crosscaps < 1)
    throw std::invalid_argument("a non-orientable surface needs at least one crosscap");
}

void validate_descriptor(const ExhaustionDescriptor& ex) {
  if (ex.ends < 1) throw std::invalid_argument("exhaustion needs at least one end");
  if (static_cast<int>(ex.planes_per_end.size()) != ex.ends)
    throw std::invalid_argument("planes_per_end must list one count per end");
  for (int nu : ex.planes_per_end)
    if (nu < 0) throw std::invalid_argument("negative plane count");
  for (const auto& level : ex.levels) {
    if (static_cast<int>(level.pieces.size()) != ex.ends)
      throw std::invalid_argument("each level needs one piece per end");
    for (int i = 0; i < ex.ends; ++i) {
      const auto& piece = level.pieces[static_cast<size_t>(i)];
      if (static_cast<int>(piece.boundary_annuli_per_plane.size()) !=
          ex.planes_per_end[static_cast<size_t>(i)])
        throw std::invalid_argument("piece annulus counts must match the plane count");
      for (const auto& s : piece.frontier_in) validate_surface(s);
      for (const auto& s : piece.frontier_out) validate_surface(s);
    }
  }
  for (size_t k = 0; k + 1 < ex.levels.size(); ++k)
    for (int i = 0; i < ex.ends; ++i) {
      const auto& out = ex.levels[k].pieces[static_cast<size_t>(i)].frontier_out;
      const auto& in = ex.levels[k + 1].pieces[static_cast<size_t>(i)].frontier_in;
      const auto same = [](const SurfaceDescriptor& a, const SurfaceDescriptor& b) {
        return a.orientable == b.orientable && a.genus_or_crosscaps == b.genus_or_crosscaps &&
               a.boundary_circles == b.boundary_circles;
      };
      if (out.size() != in.size() ||
          !std::equal(out.begin(), out.end(), in.begin(), same))
        throw std::invalid_argument("consecutive pieces do not share their frontier");
    }
}

namespace {

std::string where(int end, size_t level, const char* side, size_t comp) {
  return "end " + std::to_string(end + 1) + ", level " + std::to_string(level) + ", frontier " +
         side + ", component " + std::to_string(comp + 1);
}

}  // namespace

CheckReport check_good(const ExhaustionDescriptor& ex) {
  validate_descriptor(ex);
  CheckReport report;
  for (size_t k = 0; k < ex.levels.size(); ++k)
    for (int i = 0; i < ex.ends; ++i) {
      const auto& piece = ex.levels[k].pieces[static_cast<size_t>(i)];
      const auto scan = [&](const std::vector<SurfaceDescriptor>& fs, const char* side) {
        for (size_t c = 0; c < fs.size(); ++c) {
          if (is_disk(fs[c]))
            report.failures.push_back(where(i, k, side, c) + " is a disk");
          if (is_sphere(fs[c]))
            report.failures.push_back(where(i, k, side, c) + " is a sphere");
        }
      };
      scan(piece.frontier_in, "in");
      scan(piece.frontier_out, "out");
      if (!piece.flags.p2_irreducible)
        report.failures.push_back("piece at end " + std::to_string(i + 1) + ", level " +
                                  std::to_string(k) + " is not flagged P2-irreducible");
      if (!piece.flags.frontier_incompressible)
        report.failures.push_back("piece at end " + std::to_string(i + 1) + ", level " +
                                  std::to_string(k) + " lacks the frontier-incompressibility flag");
      if (piece.flags.is_product)
        report.failures.push_back("piece at end " + std::to_string(i + 1) + ", level " +
                                  std::to_string(k) + " is a product on its frontier");
    }
  report.passed = report.failures.empty();
  return report;
}

CheckReport check_nice(const ExhaustionDescriptor& ex) {
  validate_descriptor(ex);
  CheckReport report;
  for (size_t k = 0; k < ex.levels.size(); ++k) {
    const auto& level = ex.levels[k];
    if (level.complement_components != ex.ends)
      report.failures.push_back("level " + std::to_string(k) + " has " +
                                std::to_string(level.complement_components) +
                                " complement components, expected " + std::to_string(ex.ends));
    for (int i = 0; i < ex.ends; ++i) {
      const auto& piece = level.pieces[static_cast<size_t>(i)];
      const auto scan = [&](const std::vector<SurfaceDescriptor>& fs, const char* side) {
        for (size_t c = 0; c < fs.size(); ++c) {
          if (euler_characteristic(fs[c]) >= 0)
            report.failures.push_back(where(i, k, side, c) +
                                      " has non-negative Euler characteristic");
          if (fs[c].orientable && fs[c].genus_or_crosscaps < 1)
            report.failures.push_back(where(i, k, side, c) + " is orientable with genus zero");
        }
      };
      scan(piece.frontier_in, "in");
      scan(piece.frontier_out, "out");
      for (size_t plane = 0; plane < piece.boundary_annuli_per_plane.size(); ++plane)
        if (piece.boundary_annuli_per_plane[plane] != 1)
          report.failures.push_back("end " + std::to_string(i + 1) + ", level " +
                                    std::to_string(k) + " meets plane " +
                                    std::to_string(plane + 1) + " in " +
                                    std::to_string(piece.boundary_annuli_per_plane[plane]) +
                                    " annuli");
      if (!piece.flags.p2_irreducible || !piece.flags.boundary_irreducible ||
          !piece.flags.anannular)
        report.failures.push_back("piece at end " + std::to_string(i + 1) + ", level " +
                                  std::to_string(k) + " lacks a declared niceness flag");
    }
  }
  report.passed = report.failures.empty();
  return report;
}

ExhaustionDescriptor carve_rays(const ExhaustionDescriptor& u_ex, const std::vector<int>& nu,
                                const std::optional<PiercingMap>& piercing) {
  validate_descriptor(u_ex);
  if (static_cast<int>(nu.size()) != u_ex.ends)
    throw std::invalid_argument("carve_rays: one ray count per end required");
  for (int v : nu)
    if (v < 0) throw std::invalid_argument("carve_rays: negative ray count");
  for (int count : u_ex.planes_per_end)
    if (count != 0)
      throw std::invalid_argument("carve_rays: the input must be an open-manifold exhaustion");

  // preconditions, reported per offending component
  for (size_t k = 0; k < u_ex.levels.size(); ++k)
    for (int i = 0; i < u_ex.ends; ++i) {
      if (nu[static_cast<size_t>(i)] == 0) continue;
      const auto& piece = u_ex.levels[k].pieces[static_cast<size_t>(i)];
      const auto scan = [&](const std::vector<SurfaceDescriptor>& fs, const char* side) {
        for (size_t c = 0; c < fs.size(); ++c) {
          if (euler_characteristic(fs[c]) >= 0)
            throw std::invalid_argument("carve_rays: " + where(i, k, side, c) +
                                        " violates the negative Euler characteristic condition");
          if (fs[c].orientable && fs[c].genus_or_crosscaps < 1)
            throw std::invalid_argument("carve_rays: " + where(i, k, side, c) +
                                        " violates the positive genus condition");
        }
      };
      scan(piece.frontier_in, "in");
      scan(piece.frontier_out, "out");
    }

  // resolve the piercing assignment for the frontier after each level
  const auto components_at = [&](int end, size_t frontier) -> size_t {
    const auto& level = u_ex.levels[frontier == 0 ? 0 : frontier - 1];
    const auto& piece = level.pieces[static_cast<size_t>(end)];
    return (frontier == 0 ? piece.frontier_in : piece.frontier_out).size();
  };
  const auto assignment = [&](int end, size_t frontier) -> std::vector<int> {
    const int rays = nu[static_cast<size_t>(end)];
    if (piercing) {
      const auto& per_end = piercing->piercings;
      if (static_cast<int>(per_end.size()) != u_ex.ends ||
          per_end[static_cast<size_t>(end)].size() != u_ex.levels.size() + 1)
        throw std::invalid_argument("carve_rays: piercing map shape mismatch");
      const auto& list = per_end[static_cast<size_t>(end)][frontier];
      if (static_cast<int>(list.size()) != rays)
        throw std::invalid_argument("carve_rays: piercing map must assign every ray");
      for (int c : list)
        if (c < 0 || c >= static_cast<int>(components_at(end, frontier)))
          throw std::invalid_argument("carve_rays: piercing map names a missing component");
      return list;
    }
    if (components_at(end, frontier) != 1)
      throw std::invalid_argument(
          "carve_rays: frontier has several components; an explicit piercing map is required");
    return std::vector<int>(static_cast<size_t>(rays), 0);
  };

  ExhaustionDescriptor out = u_ex;
  out.planes_per_end = nu;
  for (size_t k = 0; k < out.levels.size(); ++k) {
    out.levels[k].complement_components = out.ends;
    for (int i = 0; i < out.ends; ++i) {
      auto& piece = out.levels[k].pieces[static_cast<size_t>(i)];
      const int rays = nu[static_cast<size_t>(i)];
      if (rays > 0) {
        for (int c : assignment(i, k))
          piece.frontier_in[static_cast<size_t>(c)].boundary_circles += 1;
        for (int c : assignment(i, k + 1))
          piece.frontier_out[static_cast<size_t>(c)].boundary_circles += 1;
      }
      piece.boundary_annuli_per_plane.assign(static_cast<size_t>(rays), 1);
      piece.flags.excellent = true;
      piece.flags.p2_irreducible = true;
      piece.flags.boundary_irreducible = true;
      piece.flags.anannular = true;
      piece.flags.frontier_incompressible = true;
      piece.flags.is_product = false;
      piece.flags.provenance = "declared: excellent ray exteriors";
    }
  }
  validate_descriptor(out);
  const bool any_rays = std::any_of(nu.begin(), nu.end(), [](int v) { return v > 0; });
  if (any_rays) {
    const CheckReport nice = check_nice(out);
    if (!nice.passed)
      throw std::logic_error("carve_rays: output failed the niceness check: " +
                             nice.failures.front());
  }
  return out;
}

DeletePlanesResult delete_planes(const ExhaustionDescriptor& m_ex, const std::vector<int>& keep) {
  validate_descriptor(m_ex);
  if (static_cast<int>(keep.size()) != m_ex.ends)
    throw std::invalid_argument("delete_planes: one kept count per end required");
  for (int i = 0; i < m_ex.ends; ++i)
    if (keep[static_cast<size_t>(i)] < 1 ||
        keep[static_cast<size_t>(i)] > m_ex.planes_per_end[static_cast<size_t>(i)])
      throw std::invalid_argument("delete_planes: kept count out of range at end " +
                                  std::to_string(i + 1));

  DeletePlanesResult result;
  result.descriptor = m_ex;
  result.descriptor.planes_per_end = keep;

  for (int i = 0; i < m_ex.ends; ++i) {
    const int nu = m_ex.planes_per_end[static_cast<size_t>(i)];
    const int kept = keep[static_cast<size_t>(i)];
    if (kept == nu) continue;
    SplitRecord rec;
    rec.end = i;
    rec.splitting_surface = {true, 1, 2};               // chi = -2
    rec.residual_surface = {true, kept - 1, 2};         // chi = 2 - 2(kept-1) - 2
    if (euler_characteristic(rec.splitting_surface) != -2)
      throw std::logic_error("delete_planes: splitting surface bookkeeping broke");
    result.splits.push_back(rec);
    const int deleted = nu - kept;
    for (auto& level : result.descriptor.levels) {
      auto& piece = level.pieces[static_cast<size_t>(i)];
      const auto shrink = [&](std::vector<SurfaceDescriptor>& fs) {
        for (auto& s : fs)
          if (s.boundary_circles >= nu) {
            s.boundary_circles -= deleted;
            return true;
          }
        return false;
      };
      if (!shrink(piece.frontier_in) || !shrink(piece.frontier_out))
        throw std::invalid_argument(
            "delete_planes: no frontier component carries every plane at end " +
            std::to_string(i + 1));
      piece.boundary_annuli_per_plane.assign(static_cast<size_t>(kept), 1);
    }
  }
  validate_descriptor(result.descriptor);
  if (!result.splits.empty()) {
    const CheckReport nice = check_nice(result.descriptor);
    if (!nice.passed)
      throw std::invalid_argument("delete_planes: Euler characteristic check failed: " +
                                  nice.failures.front());
  }
  return result;
}

}  // namespace ptk::exh
