"""Import the extension and exercise each binding once."""

import math

import dimer_exciton_py as dx


def close(a, b, tol):
    assert abs(a - b) <= tol, (a, b, tol)


fmo = dx.DimerParams(120.0, 0.0, -96.0, 35.0, 1.64, 0.0)
info = fmo.transform(temperature=300.0, gamma_d=1 / 50)
close(info["inverse_alpha"], 13.2, 0.05)
assert info["omega0"] > 0 and not info["inverted"]

eta, inv = dx.find_alpha_minimum(fmo, 0.0)
close(eta, 1.64, 0.01)
close(inv, 13.2, 0.066)

est = dx.estimate_eta(fmo, math.pi, 22.0)
close(est["eta_abs"], 0.45, 0.01)
close(est["lambda2"], 11.0, 1.0)
try:
    dx.estimate_eta(fmo, 0.0, 10.0)
except RuntimeError as err:
    assert "minimum" in str(err)
else:
    raise AssertionError("expected no solution below the minimum")

close(dx.estimate_eta_limit(200.0, 5.0, 14.0), 10.7, 0.05)
close(1 / dx.helix_attenuation(4.5, 4000.0, 7.8), 36.6, 0.2)

curve = dx.sweep_inverse_alpha(fmo, 0.0, [0.5, 1.0, 1.64, 3.0])
assert [p[0] for p in curve] == [0.5, 1.0, 1.64, 3.0]

try:
    dx.DimerParams(120.0, 0.0, -96.0, -1.0, 1.0)
except ValueError:
    pass
else:
    raise AssertionError("negative lambda1 accepted")

frame = fmo.with_eta(0.71, 0.0).transform()
nbar = dx.bose_occupation(frame["omega0"], 300.0)
site1 = [[0, 0, 0], [0, 1, 0], [0, 0, 0]]
args = (site1, [100.0, 500.0], 1 / 1100, nbar, frame["omega_plus"], frame["omega_minus"], frame["phi0"])
analytic = dx.evolve(*args)
numeric = dx.evolve(*args, method="numeric")
diff = max(abs(a - n) for ma, mn in zip(analytic, numeric) for ra, rn in zip(ma, mn) for a, n in zip(ra, rn))
assert diff < 1e-8, diff
close(sum(analytic[-1][i][i].real for i in range(3)), 1.0, 1e-12)

print("smoke test passed")
