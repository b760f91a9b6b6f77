"""Random Schanuel pairs and horseshoe extensions over kA2."""
from dexact_index.algfile import bundled, load
from dexact_index.kgroups import horseshoe_report, schanuel_report

cfg = load(bundled("ka2.alg"))
mod = cfg.ambient(cfg.catalog())

rep = schanuel_report(mod, 20, seed=3)
print(f"Schanuel: {sum(i.equal for i in rep.instances)}/{len(rep.instances)} pairs agree")
rep = horseshoe_report(mod)
twisted = sum("twisted" in i.sequence for i in rep.instances)
print(f"horseshoe: {sum(i.equal for i in rep.instances)}/{len(rep.instances)} extensions additive, "
      f"{twisted} non-split")
