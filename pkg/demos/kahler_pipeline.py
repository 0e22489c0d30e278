"""Build a generalized Kaehler pair on flat R^4 and print its diagnostics.

Run with ``python3 demos/kahler_pipeline.py``.
"""
from gengeom.calculus import KForm, MetricTensor
from gengeom.genmetric import GeneralizedMetric
from gengeom.scalar import FieldMatrix
from gengeom.structures import classify_endo, gualtieri_pair, kahler_report

J_PLUS = FieldMatrix(4, [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
J_MINUS = FieldMatrix(4, [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])


def main(b: KForm | None = None) -> bool:
    g = MetricTensor.euclidean(4)
    b = b if b is not None else KForm(4, 2, {(0, 1): 1, (2, 3): -2})
    gm = GeneralizedMetric(g, b)
    J1, J2 = gualtieri_pair(g, b, J_PLUS, J_MINUS)
    print(f"b = {b}")
    print(f"J1 is {classify_endo(J1).kind}, J2 is {classify_endo(J2).kind}")
    print("J1 J2 = J2 J1:", J1 @ J2 == J2 @ J1)
    print("-J1 J2 = G:", -(J1 @ J2) == gm.G)
    ok = True
    for name, J in (("J1", J1), ("J2", J2)):
        rep = kahler_report(gm, J)
        print(f"\n{name}:")
        for line in rep.lines():
            print("  " + line)
        ok &= rep.ok()
    return ok


if __name__ == "__main__":
    raise SystemExit(0 if main() else 1)
