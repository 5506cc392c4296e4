"""Walk through one certified bound, step by step.

We bound the ambient dimension needed for dense level-42 points on an
intersection of one form in each degree 2..6, then replay the resulting
certificate to confirm every inequality in the chain.
"""
import json

from oblit import (
    RdBoundFn,
    TypeSeq,
    bound_f,
    builtin_table,
    cert_from_json,
    cert_to_json,
    replay,
)
from oblit.cli import _render_chain


def main():
    table = builtin_table("prior")
    rdfn = RdBoundFn(table)
    m = TypeSeq((1, 1, 1, 1, 1))
    level = 42

    cert = bound_f(level, rdfn, 0, m)
    print(f"type {m.text()} at level {level}: bound {cert.value}")
    print()
    for line in _render_chain(cert):
        print(line)
    print()
    print(f"total steps:     {cert.stats.total_steps}")
    print(f"largest product: {cert.stats.largest_product}")

    # the certificate survives serialization and independent replay
    doc = json.dumps(cert_to_json(cert))
    again = cert_from_json(json.loads(doc))
    print(f"replayed value:  {replay(again, rdfn)}")


if __name__ == "__main__":
    main()
