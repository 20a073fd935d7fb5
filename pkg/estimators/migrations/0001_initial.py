# Generated by Django 5.2.6

import estimators.models
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name='RunManifest',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('command', models.CharField(max_length=64)),
                ('parameters', models.JSONField(default=dict)),
                ('seed', models.BigIntegerField(blank=True, null=True)),
                ('version', models.CharField(max_length=32)),
                ('outputs', models.JSONField(default=list)),
                ('created_at', models.DateTimeField(default=estimators.models.default_created_at)),
            ],
            options={
                'ordering': ['-created_at'],
            },
        ),
    ]
