"""
Provide a command line entry point for the library.
"""
import argparse
import logging
import sys

from supertorsion import configuration
from supertorsion.components import register_core_commands, registered_commands

logger = logging.getLogger(__name__)


class Application:
    """
    Application entry point for the commands.
    """

    def __init__(self, output=None):
        self._output = output

    def build_parser(self):
        parser = argparse.ArgumentParser(prog='supertorsion',
                                         description='Torsion of graded representations up to homotopy')
        parser.add_argument('-c', '--config', dest='filename', default=None, help='Configuration file')
        parser.add_argument('-v', '--verbose', action='store_true', default=False, help='Log debug details')
        subparsers = parser.add_subparsers(dest='command')
        subparsers.required = True

        for command_class in registered_commands():
            command = command_class(self._output)
            sub_parser = subparsers.add_parser(command.name, help=command.description)
            command.add_arguments(sub_parser)
            sub_parser.set_defaults(handler=command)
        return parser

    def run(self, argv=None):
        """
        Parse the arguments and execute the selected command.
        :return: exit status
        """
        arguments = self.build_parser().parse_args(argv)

        logging.basicConfig(stream=sys.stderr, level=logging.DEBUG if arguments.verbose else logging.WARNING,
                            format='%(levelname)s %(name)s: %(message)s')

        if arguments.filename:
            configuration.load_file(arguments.filename)

        try:
            return arguments.handler.run(arguments)
        except Exception as e:
            logger.error('Error executing command: %s' % arguments.command)
            raise e


def main(argv=None):
    register_core_commands()
    return Application().run(argv)


if __name__ == '__main__':
    sys.exit(main())
