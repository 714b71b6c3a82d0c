"""Plant a noise model, learn it back from noiseless expectation values.

With exact expectations the decay fits are perfect, so whatever the fit
misses is a limit of what the circuits can see.  Pair measurements only fix
products f_P f_P' when the layer changes a Pauli's support, so some
directions of the rate vector are invisible.  The projection of the error
onto the visible directions is at machine precision.
"""

import numpy as np

from spl_learn.layer import Gate, Layer
from spl_learn.learn import LearnConfig, learn_end_to_end, planted_model
from spl_learn.model import ModelSpec

spec = ModelSpec.from_edges(6, [(i, i + 1) for i in range(5)], 2)
layer = Layer(6, (Gate("cz", (0, 1)), Gate("cx", (2, 3)), Gate("cz", (4, 5))))

if __name__ == "__main__":
    model = planted_model(spec, np.random.default_rng(7))
    res = learn_end_to_end(LearnConfig(layer, spec, model, exact=True, prep_flip=0.01, readout_flip=0.02))

    A = res.design.matrix
    error = res.fit.rates - np.asarray(model.rates)
    visible = np.linalg.pinv(A) @ A @ error
    print(f"{len(res.selection.bases.bases)} bases, {len(res.pairs)} decay series, "
          f"design rank {res.fit.rank.rank} of {res.fit.rank.columns}")
    print(f"raw rate error        {np.abs(error).max():.2e}")
    print(f"visible rate error    {np.abs(visible).max():.2e}")
    print(f"benchmark error       {res.diagnostics['max_benchmark_error']:.2e}")
    print("SPAM flips only lower the fitted amplitudes:",
          sorted({round(p.fit.amplitude, 4) for p in res.pairs})[:4], "...")
