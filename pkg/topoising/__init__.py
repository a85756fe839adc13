import logging

from flask import Flask

from topoising.config import Config

LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'


def create_app(config_class: type[Config] | None = None):
    app = Flask(__name__)

    config_obj = config_class or Config
    app.config.from_object(config_obj)

    level = getattr(logging, str(app.config.get('LOG_LEVEL', 'INFO')).upper(), logging.INFO)
    logging.basicConfig(level=level, format=LOG_FORMAT)
    logging.getLogger('topoising').setLevel(level)
    app.logger.setLevel(level)

    from topoising.cli import cli
    for command in cli.commands.values():
        app.cli.add_command(command)

    app.logger.debug(f"topoising app created with {config_obj.__name__}, "
                     f"{app.config['TOPOISING_THREADS']} worker(s)")
    return app
