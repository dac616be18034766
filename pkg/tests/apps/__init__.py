from fracmp.apps import RunConfig

from tests.utils import config


def run_config(**params):
    return RunConfig.from_config(config(**params))
