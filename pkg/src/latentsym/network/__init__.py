from .cospectral import (
    check_trimer_conditions,
    cospectral_classes,
    is_cospectral,
    singlet_report,
    singlet_sites,
    support_graph,
)
from .hamiltonian import (
    build_hamiltonian,
    delete_vertex,
    network_from_dict,
    network_to_dict,
)
