"""What changes when the B-field is not closed.

For g = I on R^3 and b = x3 dx1^dx2 this prints the torsion of nabla+,
the Nijenhuis witness for the connection bracket, and shows that adding an
exact 2-form to b leaves nabla+ unchanged.
"""
from gengeom.calculus import KForm, MetricTensor, ext_d
from gengeom.connections import torsion3_array
from gengeom.genmetric import GeneralizedMetric, nabla_integrability_check, nabla_plus
from gengeom.random_data import make_rng, random_form


def main():
    g = MetricTensor.euclidean(3)
    b = KForm(3, 2, {(0, 1): "x3"})
    gm = GeneralizedMetric(g, b)
    nb = nabla_plus(gm)
    print(f"b = {b}, db = {ext_d(b)}")
    print(nb)
    print("g(T(d1,d2),d3) =", torsion3_array(nb, g)[0][1][2])

    rep = nabla_integrability_check(gm, nb)
    for line in rep.lines():
        print(line)

    alpha = random_form(make_rng(1, "demo"), 3, 1, 2)
    shifted = nabla_plus(gm.with_b(b + ext_d(alpha)))
    print(f"\nb + d({alpha}) gives the same nabla+:", shifted == nb)


if __name__ == "__main__":
    main()
