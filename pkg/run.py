from flask.cli import FlaskGroup

from topoising import create_app

cli = FlaskGroup(create_app=create_app, add_default_commands=False,
                 help='Perturbed topological code workbench.')


def main():
    cli.main(prog_name='topoising')


if __name__ == '__main__':
    main()
