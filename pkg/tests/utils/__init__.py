from fracmp.utils.config import Config


def config(**params):
    params.setdefault('run.log_level', 'none')
    return Config(**params)
