#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "multifield/group_action.hpp"
#include "multifield/manifold.hpp"
#include "multifield/types.hpp"

namespace multifield {

// A material is four scalar closures over dual arguments plus the manifold
// carrying the order parameter. rho0: referential mass density; chi:
// substructural kinetic co-energy per unit mass; e: internal energy per unit
// mass; w: external potential per unit mass (may be empty).
struct MaterialModel {
  std::string id;
  std::function<Dual(const DVec3& X)> rho0;
  std::function<Dual(const DVecX& nu, const DVecX& nudot)> chi;
  std::function<Dual(const DVec3& X, const DMat3& F, const DVecX& nu,
                     const DMatX& gradnu)>
      e;
  std::function<Dual(const DVec3& x, const DVecX& nu)> w;  // optional
  ManifoldSpec manifold;
  std::optional<GroupActionSpec> action;
  bool homogeneous = true;  // no explicit X dependence in rho0 or e

  bool has_w() const { return static_cast<bool>(w); }
};

using ModelParams = std::map<std::string, double>;

struct ModelInfo {
  std::string id;
  std::string manifold;
  bool has_action = false;
  std::string summary;
};

// Name -> factory registry. Registration runs admissibility sampling on a
// freshly built instance (rho0 > 0, chi convex in nudot at sampled states,
// chi(nu, 0) == 0) and rejects the model otherwise.
class ModelRegistry {
 public:
  using Factory = std::function<MaterialModel(const ModelParams&)>;

  void add(const std::string& id, const std::string& summary, Factory f);
  MaterialModel make(const std::string& id, const ModelParams& params = {}) const;
  bool contains(const std::string& id) const;
  std::vector<ModelInfo> list() const;

 private:
  struct Entry {
    Factory factory;
    ModelInfo info;
  };
  std::map<std::string, Entry> entries_;
};

// Registry preloaded with the shipped fixtures:
//   M1              flat ambient order parameter, quadratic energies
//   M2-director     unit-sphere director, one-constant gradient energy
//   M3-point        structureless point mass in a quadratic well
//   quartic-chi     quartic substructural kinetic co-energy
//   iso-solid       referentially isotropic coupled solid
//   aniso-fiber     fiber-reinforced (referentially anisotropic) solid
//   skew-broken     deliberately non-invariant stored energy
//   M1-rho-gradient M1 with a spatially varying referential density
ModelRegistry& default_registry();

// Admissibility sampling used by ModelRegistry::add; throws RegistrationError.
void check_admissibility(const MaterialModel& m, unsigned seed = 20260814u);

}  // namespace multifield
