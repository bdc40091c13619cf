"""
Test enumerations for the job options and their utility classes.
"""
import unittest
import enum

from supertorsion.components import errors
from supertorsion.components.enums import ErrorCodes, Flag, JobOptions


class EnumerationTestCase(unittest.TestCase):

    def test_flag_mixin(self):

        field_type = 'boolean'
        var = 'some_var_name'
        default_value = 'default_value'

        class TestEnumeration(Flag, enum.Enum):
            TEST_ENUM = (var, field_type, default_value)

        self.assertEqual(TestEnumeration.TEST_ENUM.var, var)
        self.assertEqual(TestEnumeration.TEST_ENUM.field_type, field_type)
        self.assertEqual(TestEnumeration.TEST_ENUM.default, default_value)

    def test_fetch_defaults(self):
        self.assertEqual(JobOptions.SUBDIVIDE.fetch_from({}), 1)
        self.assertIsNone(JobOptions.CHECKS.fetch_from({}))

    def test_fetch_conversions(self):
        self.assertEqual(JobOptions.SUBDIVIDE.fetch_from({'subdivide': '3'}), 3)
        self.assertEqual(JobOptions.CHECKS.fetch_from({'checks': 'duality, mu'}), ['duality', 'mu'])
        self.assertEqual(JobOptions.CHECKS.fetch_from({'checks': ['mu']}), ['mu'])
        self.assertEqual(JobOptions.CHECKS.fetch_from({'checks': ''}), [])
        self.assertEqual(JobOptions.MU.fetch_from({JobOptions.MU: '5/2'}), '5/2')

    def test_every_error_code_has_an_exception(self):
        classes = [value for value in vars(errors).values()
                   if isinstance(value, type) and issubclass(value, errors.SupertorsionError)]
        self.assertEqual(set(cls.code for cls in classes), set(ErrorCodes))
        self.assertEqual(len(classes), len(ErrorCodes))
