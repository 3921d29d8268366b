from .decorators import job
from .formats import graph_id, read_plg
from .lemmas import check_graph


@job()
def scan_graph(lemma: str, plg: str, options=None):
    """
    Campaign job: one lemma on one graph given in PLG form.
    """
    g = read_plg(plg)
    outcome = check_graph(lemma, g, options)
    outcome["graph_id"] = graph_id(g)
    return outcome
