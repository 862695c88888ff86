from .sphere import SphereModel, MixtureModel
from .gaussian import GaussianModel


def model_from_dict(data):
    """
    Creates a model from its json representation.

    Parameters
    ----------
    data: dict
        The model data, with key 'type' in
        'sphere', 'mixture', 'gaussian'

    Returns
    -------
    model: rhocompat.models.CopulaModel
        The model

    :group: models

    """
    if "type" not in data:
        raise KeyError(f"Model data: Missing key 'type', found {sorted(data.keys())}")

    mtype = data["type"]
    if mtype == "sphere":
        return SphereModel(data["a"], unit_variance=data.get("unit_variance", False))

    elif mtype == "mixture":
        comps = []
        for c in data["components"]:
            if isinstance(c, dict):
                comps.append(model_from_dict(c))
            else:
                comps.append(SphereModel(c))
        return MixtureModel(
            data["weights"], comps, unit_variance=data.get("unit_variance", False)
        )

    elif mtype == "gaussian":
        return GaussianModel(
            data["param"],
            repaired=data.get("repaired", False),
            repair_distance=data.get("repair_distance", 0.0),
        )

    raise KeyError(
        f"Model data: Unknown type '{mtype}', choices: sphere, mixture, gaussian"
    )
