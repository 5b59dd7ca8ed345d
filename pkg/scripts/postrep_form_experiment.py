"""Compare the two readings of the nu-of-a-bracket identity and of the twisted nu."""

from bihom import construct as C
from bihom import verify as V
from bihom.catalog import emit, sl2_classical
from bihom.linalg import MatrixS


def main():
    for name, post in (("sl2-post-lie", emit("sl2-post-lie")),
                       ("classical", C.rota_baxter_induced(sl2_classical(("lambda", "gamma")).with_maps(
                           R=MatrixS.diag([0, 1, 1])), -1))):
        adj = C.adjoint_post_representation(post)
        for form in ("semidirect", "printed"):
            rep = V.check_post_lie_representation(adj, nu_bracket_form=form)
            print(f"{name:13} nu-bracket form {form:10}: {', '.join(rep.failed()) or 'pass'}")

    classical = sl2_classical(("lambda", "gamma")).with_maps(R=MatrixS.diag([0, 1, 1]))
    base = C.rota_baxter_induced(classical, -1)
    sl2 = emit("sl2-bihom")
    a, b = sl2.alpha, sl2.beta
    twisted = C.twist_post_lie(base, a, b)
    adj = C.adjoint_post_representation(base)
    for form in ("semidirect", "printed"):
        r = C.twist_post_lie_representation(adj, a, b, a, b, nu_form=form)
        r = r.evolve(algebra=twisted)
        print(f"twisted nu ({form:10}): {', '.join(V.check_post_lie_representation(r).failed()) or 'pass'}")


if __name__ == "__main__":
    main()
