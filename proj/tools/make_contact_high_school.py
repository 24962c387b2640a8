#!/usr/bin/env python3
"""Rebuild the contact-high-school simplicial corpus from the raw SocioPatterns
contact log (High-School_data_2013.csv, columns: t i j class_i class_j).

Every 20 s timestamp contributes the maximal cliques of its contact graph as
simplices. Output is the three-file layout (nverts / simplices / times).

The raw log ships inside the hypergraphx wheel on PyPI:
    pip download --no-deps hypergraphx==1.8.0
    python3 tools/make_contact_high_school.py hypergraphx-1.8.0-py3-none-any.whl data/contact-high-school
"""
import collections
import io
import sys
import zipfile
from pathlib import Path

import networkx as nx

MEMBER = "tests/test_data/hs/High-School_data_2013.csv"


def main(src: str, out_dir: str) -> None:
    if src.endswith(".whl"):
        raw = zipfile.ZipFile(src).read(MEMBER).decode()
    else:
        raw = Path(src).read_text()
    by_time = collections.OrderedDict()
    for line in io.StringIO(raw):
        t, i, j, _, _ = line.split()
        by_time.setdefault(int(t), []).append((int(i), int(j)))

    nverts, simplices, times = [], [], []
    for t in sorted(by_time):
        g = nx.Graph(by_time[t])
        for clique in sorted(sorted(c) for c in nx.find_cliques(g)):
            nverts.append(len(clique))
            simplices.extend(clique)
            times.append(t)

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    name = "contact-high-school"
    (out / f"{name}-nverts.txt").write_text("".join(f"{k}\n" for k in nverts))
    (out / f"{name}-simplices.txt").write_text("".join(f"{v}\n" for v in simplices))
    (out / f"{name}-times.txt").write_text("".join(f"{t}\n" for t in times))
    print(f"{len(nverts)} simplices, {len(set(simplices))} vertices")


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2])
