package org.zalando.catwatch.backend.web;

import java.text.ParseException;
import java.text.SimpleDateFormat;
import java.util.Collection;
import java.util.Date;
import java.util.List;

import org.springframework.beans.factory.annotation.Autowired;
import org.springframework.http.HttpStatus;
import org.springframework.http.ResponseEntity;
import org.springframework.web.bind.annotation.RequestMapping;
import org.springframework.web.bind.annotation.RequestMethod;
import org.springframework.web.bind.annotation.RequestParam;
import org.springframework.web.bind.annotation.RestController;

import io.swagger.annotations.ApiOperation;
import io.swagger.annotations.ApiParam;

import org.zalando.catwatch.backend.model.Contributor;
import org.zalando.catwatch.backend.model.Language;
import org.zalando.catwatch.backend.model.ProjectStats;
import org.zalando.catwatch.backend.repo.ProjectRepository;
import org.zalando.catwatch.backend.util.Constants;

@RestController
@RequestMapping("/statistics")
public class StatisticsRestController {

    @Autowired
    private ProjectRepository repository;

    @ApiOperation(value = "Fetch aggregated statistics for given organizations")
    @RequestMapping(method = RequestMethod.GET)
    public ResponseEntity<Collection<ProjectStats>> statisticsGet(
            @ApiParam(value = "List of github.com organizations to scan (comma separated)")
            @RequestParam(value = Constants.API_REQUEST_PARAM_ORGANIZATIONS, required = false) String organizations,
            @ApiParam(value = "Date from which to start fetching records from database (default = current_date)")
            @RequestParam(value = Constants.API_REQUEST_PARAM_STARTDATE, required = false) String startDateString,
            @ApiParam(value = "Date till which records will be fetched from database (default = current_date)")
            @RequestParam(value = Constants.API_REQUEST_PARAM_ENDDATE, required = false) String endDateString)
            throws ParseException {
        List<ProjectStats> stats = repository.findStats(organizations, parse(startDateString), parse(endDateString));
        return new ResponseEntity<>(stats, HttpStatus.OK);
    }

    @ApiOperation(value = "Fetch statistics of projects for given organizations")
    @RequestMapping(value = "/projects", method = RequestMethod.GET)
    public ResponseEntity<Collection<ProjectStats>> statisticsProjectGet(
            @ApiParam(value = "List of github.com organizations to scan (comma separated)")
            @RequestParam(value = Constants.API_REQUEST_PARAM_ORGANIZATIONS, required = false) String organizations,
            @ApiParam(value = "Date from which to start fetching records from database (default = current_date)")
            @RequestParam(value = Constants.API_REQUEST_PARAM_STARTDATE, required = false) String startDateString,
            @ApiParam(value = "Date till which records will be fetched from database (default = current_date)")
            @RequestParam(value = Constants.API_REQUEST_PARAM_ENDDATE, required = false) String endDateString)
            throws ParseException {
        Date start = parse(startDateString);
        Date end = parse(endDateString);
        return new ResponseEntity<>(repository.findStats(organizations, start, end), HttpStatus.OK);
    }

    @ApiOperation(value = "Fetch contributor statistics for given organizations")
    @RequestMapping(value = "/contributors", method = RequestMethod.GET)
    public ResponseEntity<Collection<Contributor>> statisticsContributorsGet(
            @RequestParam(value = Constants.API_REQUEST_PARAM_ORGANIZATIONS, required = false) String organizations,
            @RequestParam(value = Constants.API_REQUEST_PARAM_STARTDATE, required = false) String startDateString,
            @RequestParam(value = Constants.API_REQUEST_PARAM_ENDDATE, required = false) String endDateString)
            throws ParseException {
        return new ResponseEntity<>(
                repository.findContributors(organizations, parse(startDateString), parse(endDateString), null),
                HttpStatus.OK);
    }

    @ApiOperation(value = "Fetch the languages used by projects of given organizations")
    @RequestMapping(value = "/languages", method = RequestMethod.GET)
    public ResponseEntity<Collection<Language>> statisticsLanguagesGet(
            @RequestParam(value = Constants.API_REQUEST_PARAM_ORGANIZATIONS, required = false) String organizations,
            @RequestParam(value = Constants.API_REQUEST_PARAM_LIMIT, required = false, defaultValue = "10") Integer limit,
            @RequestParam(value = Constants.API_REQUEST_PARAM_OFFSET, required = false, defaultValue = "0") Integer offset) {
        if (limit < 1 || limit > Constants.MAX_LIMIT) {
            throw new IllegalArgumentException("limit must be between 1 and " + Constants.MAX_LIMIT);
        }
        return new ResponseEntity<>(LanguageStats.of(repository, organizations, limit, offset), HttpStatus.OK);
    }

    private static Date parse(String value) throws ParseException {
        if (value == null) {
            return new Date();
        }
        return new SimpleDateFormat(Constants.DATE_PATTERN).parse(value);
    }
}
