"""Write model files, classify them in a batch, and show the report.

Runs the same batch with one and with four worker processes and checks that
the rendered reports are identical.
"""

import tempfile
from pathlib import Path

from pinchkit.dataio import RunConfig, batch_classify, save_point_data
from pinchkit.models import clifford_minimal, einstein_torus, umbilical_sphere


def main():
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        points = {
            "torus": einstein_torus(7, 3, 1.0, 0.25)[0],
            "clifford": clifford_minimal(3, 1.0, 0.0)[0],
            "umbilical": umbilical_sphere(7, 2, 0.0, 1.0),
        }
        paths = []
        for name, P in points.items():
            save_point_data(P, tmp / f"{name}.json")
            paths.append(tmp / f"{name}.json")
        (tmp / "broken.json").write_text('{"n": 7, "m": 1}')
        paths.append(tmp / "broken.json")

        serial = batch_classify(paths, 3, RunConfig(seed=1, workers=1))
        pooled = batch_classify(paths, 3, RunConfig(seed=1, workers=4))
        text = serial.render("markdown").replace(str(tmp) + "/", "")
        print(text)
        print(f"error rows: {serial.n_errors}; identical across worker counts: "
              f"{serial.render('json') == pooled.render('json')}")


if __name__ == "__main__":
    main()
