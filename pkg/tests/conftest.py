import random

import pytest

from mixedgraphs.generators import random_dag, random_spec
from mixedgraphs.independence import independence_model, marginalise_condition
from mixedgraphs.project import project_ag, project_rg, project_sg

ACCEPTANCE_SEED = 20260808


@pytest.fixture(scope="session")
def stability_corpus():
    """500 (DAG <= 6 nodes, random disjoint M/C) instances with the base
    model, the marginalised/conditioned model, and all three projections.

    Shared by the stability, correspondence, and class-closure criteria.
    """
    instances = []
    for k in range(500):
        rng = random.Random(ACCEPTANCE_SEED + k)
        g = random_dag(rng, rng.randint(2, 6))
        spec = random_spec(rng, g)
        expected = marginalise_condition(independence_model(g), spec.marg, spec.cond)
        projections = {
            "rg": project_rg(g, spec),
            "sg": project_sg(g, spec),
            "ag": project_ag(g, spec),
        }
        models = {name: independence_model(p) for name, p in projections.items()}
        instances.append(
            {
                "graph": g,
                "spec": spec,
                "expected": expected,
                "projections": projections,
                "models": models,
            }
        )
    return instances
